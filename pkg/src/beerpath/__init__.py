"""Distance, beer-distance and beer-path queries on outerplanar graphs."""
from .beerbase import BeerBaseTables, beer_edge_path, build_beer_base
from .dual import Chains, DualTree, build_chains, build_dual, chain_dist, face_of
from .engine import BeerPathEngine, build_engine
from .estimator import OuterplanarBeerOracle
from .exceptions import *  # noqa: F401,F403
from .fixtures import FIX_8FAN, FIXTURES, emit_fixture, get_fixture
from .graph import (FIX_F4, FIX_H6, FIX_T3, INF, BeerGraph, PathInG, ValidationReport, dumps_graph,
                    is_maximal, loads_graph, make_path, read_graph, satisfies_gti, validate, write_graph)
from .harness import (OracleTables, gen_path_maximal, gen_random_maximal, gen_random_outerplanar,
                      oracle_all_pairs, oracle_beer_sssp, reduce_path_min, answer_path_min)
from .normalize import NormalizedGraph, enforce_gti, expand_edge, maximalize, normalize
from .oracle import (BeerDistanceOracle, FacePairSummary, base_summary, build_oracle, combine,
                     query_beer_dist, query_dist)
from .paths import (DagH, PathContext, build_context, build_dag, fan_beer_dist, fan_beer_path, fan_dist,
                    fan_sp, query_beer_path)
from .sssp import SsspBeerResult, sssp_beer, sssp_beer_path

__version__ = "0.1.0"
