"""Finite common meadows: rings with a total inverse, built as directed
lattices of rings glued over an absorbing element **a**."""

from .diagram import (DiagramCandidate, RingDiagram, build_diagram, diagram,
                      diagram_from_meadow, meadow_from_diagram, ring_meadow_diagram,
                      validate_diagram)
from .errors import (DomainError, DuplicateNameError, FormatError, FunctorialityError,
                     MeadowError, ParseError, PreconditionError, SizeError, StructuralError,
                     ValidationError)
from .flasque import (check_defect_identity, decomposition_iso, flasque_closure,
                      flasque_inverse_exists, is_flasque, is_flasque_via_top, product_meadow)
from .formats import Workspace, dump, dumps, emit_dot, load, loads, parse_file, parse_text
from .lattice import (CommutativeMonoid, ZeroLattice, boolean_lattice, chain, diamond,
                      from_mul_table, from_order)
from .meadow import (Level, Meadow, check_common_axioms, check_premeadow, classify,
                     compute_J, fiber_ring, fibers, resolve, synthesize_inverse,
                     transition_map, zero_monoid)
from .mr import build_MR, greatest_J_in_MR, verify_MR_common
from .report import Report, Violation
from .rings import (FiniteRing, Ideal, RingHom, check_hom, check_ring_axioms, cyclic_ring,
                    enumerate_homs, enumerate_ideals, finite_field, quotient, ring_power,
                    ring_product, trivial_ring)
