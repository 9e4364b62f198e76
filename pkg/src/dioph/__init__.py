"""dioph: searching, verifying and stress-testing shifted-power tuple
structures — generalized and bipartite Diophantine tuples, multiplicative
Hilbert cubes, generalized Pell equations, and larger-sieve bounds."""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    euler_phi,
    factorize,
    integer_kth_root,
    is_kth_power,
    omega,
    primes_in_progression,
    radical,
)
from .cubes import (
    CubeVerdict,
    HilbertCube,
    cube_elements,
    dimension_bounds,
    restricted_product_set,
    search_cubes,
    verify_cube,
    verify_prodl,
)
from .errors import BudgetError, DomainError, SchemaError
from .gaps import (
    AntigapVerdict,
    BennettLambda,
    GapVerdict,
    GrowthFloors,
    abc_identity_quality,
    antigap_audit,
    bennett_gamma,
    bennett_lambda,
    check_a0X,
    check_gap,
    gap_floor,
    growth_floor_sequence,
)
from .pell import (
    CFExpansion,
    PellClass,
    PellSolution,
    base_solutions,
    brute_solutions,
    cf_sqrt,
    enumerate_solutions,
    fundamental_solution,
    residue_obstruction,
    simultaneous_solve,
)
from .sieve import (
    ResidueModel,
    SieveReport,
    kth_power_residues,
    larger_sieve_bound,
    max_B_mod_p,
    sieve_pipeline,
    weil_bound,
)
from .tuples import (
    BipartitePair,
    TupleInstance,
    VerifyReport,
    bdkn_2x2_configs,
    extend_B,
    search_dkn,
    search_ordered_bipartite,
    verify_bdkn,
    verify_dkn,
)

__all__ = [name for name in dir() if not name.startswith("_")]
