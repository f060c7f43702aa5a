"""Property-graph constraints: GFDs, GGDs and PG-Keys.

Validation over CQ/CRPQ patterns with all-walk semantics, constructive
translations between the formalisms, separation witnesses, and bounded
differential checking on small enumerated graphs.
"""

from .errors import *  # noqa: F401,F403
from .graph import (
    PropertyGraph,
    Walk,
    build_graph,
    enumerate_walks,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
)
from .regex import compile_regex, parse_regex
from .pattern import Query, parse_predicates, parse_query, eval_predicates
from .constraints import (
    EXCLUSIVE,
    MANDATORY,
    SINGLETON,
    GfdConstraint,
    GgdConstraint,
    PgKeyConstraint,
    classify,
    parse_constraint,
    parse_constraints,
    print_constraint,
    shared_variables,
)
from .matcher import Match, WalkBudget, extend_match, find_matches, first_match, has_match, iter_matches
from .validator import SATISFIED, VIOLATED, Verdict, ViolationWitness, validate, validate_set
from .translate import RULES, TranslationReport, apply_rule
from .witnesses import WITNESSES, WitnessBundle, make_witness
from .equiv import EnumSpec, DifferentialReport, differential_check, enumerate_graphs, spec_for

__version__ = "0.1.0"
