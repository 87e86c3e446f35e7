"""Exceptional bundles, the Drézet–Le Potier envelope and the geometric chamber
of stability conditions on the local projective plane's fibre geometry."""
from .ktheory import KClass, POINT, LINE, PLANE, line_bundle, euler_p2, skew_pairing
from .exceptional import ExceptionalClass, enumerate_exceptional, markov_triples
from .dlp import EnvelopeModel, delta_at
from .chamber import QComplex, SlicePoint, CentralCharge, in_geometric_chamber, projection_f
from .walls import PathSpec, detect_crossings, normalize_to_geometric
from .autgroup import KAutomorphism, from_word, express_twist_as_word
from .picard import GluingData, normal_form, glue_on_X

__version__ = "0.1.0"
