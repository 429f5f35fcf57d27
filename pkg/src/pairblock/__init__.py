"""Pairing-strategy Breaker for m-in-a-row games on finite lattice boards.

Construct a pairing certificate for any set of primitive winning directions,
verify that it blocks every window, play Maker-Breaker games against it, and
explore where pairing strategies provably cannot exist.
"""

from .analysis import (
    ColoredGraph,
    PeriodicPairing,
    certificate_periodic_pairing,
    conjecture2_search,
    conjecture3_search,
    lower_bound_demo,
    mod6_obstruction_check,
    refute_pairing,
)
from .embedding import (
    EmbeddingData,
    PrimeContext,
    build_r,
    direction_offsets,
    embed,
    find_u,
    is_prime,
    next_prime_at_least,
)
from .engine import (
    GameState,
    GameStatus,
    Player,
    breaker_move,
    detect_maker_win,
    make_maker,
    play_game,
    simulate_batch,
)
from .errors import (
    InfeasibleError,
    InternalInvariantViolation,
    InvalidVector,
    MalformedInstance,
    NotPrimitiveError,
    PairblockError,
    ZeroVectorError,
)
from .lattice import (
    BoardSpec,
    Direction,
    Vector,
    Window,
    canonicalize_direction,
    enumerate_windows,
    gcd_vector,
    normalize_directions,
)
from .pairing import (
    BlockingReport,
    GameSpec,
    PairingCertificate,
    PartnerResult,
    PartnerStatus,
    build_certificate,
    dumps_certificate,
    load_certificate,
    partner,
    residue_of,
    save_certificate,
    verify_blocking,
)
from .residues import (
    ResidueSystem,
    feasibility_atlas,
    oracle_solve,
    solve_residues,
    verify_residue_system,
)

__version__ = "0.1.0"
