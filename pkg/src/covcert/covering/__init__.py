from .bounds import denominator_bound, denominator_bound_compact, gram_bound
from .dyadic import DyadicDomain, DyadicVoxel, is_full_subtree
from .search import (
    BOUNDED,
    CENTERED,
    UNBOUNDED,
    CoveringVerdict,
    DyadicSearch,
    SearchLimitExceeded,
    coset_avoids,
    decide_ge,
    decide_le,
    domain_fits,
    voxel_fits,
)
from .exact import ExactMuResult, exact_mu, simplest_between
