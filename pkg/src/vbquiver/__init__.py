"""Virtual biquandle colorings, Boltzmann weights, coloring quivers and their polynomial invariants."""

from .algebra import AbelianGroup, VirtualBiquandle, enumerate_endomorphisms, validate_virtual_biquandle
from .diagram import ClassicalCrossing, VirtualCrossing, VirtualDiagram
from .gauss import parse_gauss, realize
from .homset import boltzmann_pair, boltzmann_value, crossing_vectors, find_colorings, weight_multiset
from .invariants import MultiPoly, compute_invariant, poly_to_string
from .io import load_data_vector, load_diagrams
from .quiver import build_quiver
from .weights import BoltzmannWeight, is_strongly_compatible, validate_boltzmann

__version__ = "0.1.0"
