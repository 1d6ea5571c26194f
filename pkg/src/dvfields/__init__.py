"""Exact arithmetic for valued fields carrying truncated derivations.

Hahn-series models over lex value groups, exact rational-function residue
fields, dual-number generalized residues, line specialization and mutation,
Newton polygons, density witnesses by symbol adjunction, and the adversarial
unliftability game.
"""

__version__ = "0.1.0"

from .coeffield import DualNumber, KElem, dual, dual_invert, repeated_eigenvalue_check
from .deriv import DerivationSpec, check_diffs_identity
from .dvmodel import DVModel, RingClass, RingTag, base_model
from .errors import (
    DVError,
    DomainError,
    HypothesisError,
    ParseError,
    PrecisionError,
    SoundnessError,
    StructuralError,
    UnsupportedGroupError,
)
from .game import GameModel, GameTranscript, MatchedU, make_game_model
from .hahn import HahnSeries, ResidueClass, constant, monomial, one, zero
from .inflator import EpsSubspace, Line, TameClass, Window
from .newton import NewtonPolygon, RolleCertificate, ValuedPoly
from .ordgroup import (
    INFINITY,
    ConvexSubgroup,
    GroupElem,
    QQ1,
    ValueGroupDesc,
    ZZW,
)
