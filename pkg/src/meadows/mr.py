"""M(R): one fiber R/I per ideal I of R, with the canonical projections.

Nodes are ideals under reverse inclusion: the zero ideal is the top node and
R itself (trivial quotient) the bottom.  Node ids are generator labels such
as ``(3)``.
"""

from dataclasses import dataclass, field

from .diagram import DiagramCandidate, build_diagram, meadow_from_diagram
from .errors import DomainError, SizeError
from .meadow import compute_J, fibers, greatest_node, node_name, synthesize_inverse
from .rings import (DEFAULT_MAX_CARRIER, enumerate_ideals, ideal_label, is_field,
                    principal_ideal, quotient)

MAX_IDEALS = 64
MAX_MR_CARRIER = 2048


@dataclass
class MRDiagram:
    ring: object
    ideals: list
    labels: list
    quotients: list
    projections: list
    diagram: object
    _meadow: object = field(default=None, repr=False)

    def node_of(self, ideal):
        return self.labels[self.ideals.index(ideal)]

    def ideal_of(self, label):
        return self.ideals[self.labels.index(label)]

    def meadow(self):
        if self._meadow is None:
            self._meadow = meadow_from_diagram(self.diagram, f"M({self.ring.name})")
        return self._meadow


def mr_carrier_size(R, ideals):
    return sum(R.size // len(I) for I in ideals)


def build_MR(R, max_ideals=MAX_IDEALS, max_carrier=MAX_MR_CARRIER,
             max_ring=DEFAULT_MAX_CARRIER):
    ideals = enumerate_ideals(R, max_carrier=max_ring)
    if len(ideals) > max_ideals:
        raise SizeError(f"{R.name} has {len(ideals)} ideals, cap is {max_ideals}")
    n = mr_carrier_size(R, ideals)
    if n > max_carrier:
        raise SizeError(f"M({R.name}) has {n} elements, cap is {max_carrier}")
    labels = [ideal_label(I) for I in ideals]
    qs, projs = zip(*(quotient(R, I) for I in ideals))
    nodes = {lab: Q for lab, Q in zip(labels, qs)}
    edges = {}
    for i, I in enumerate(ideals):
        for j, J in enumerate(ideals):
            if i == j or not I.issubset(J):
                continue
            if any(k not in (i, j) and I.issubset(K) and K.issubset(J)
                   for k, K in enumerate(ideals)):
                continue
            # R/I -> R/J on coset representatives
            reps = [R.index(t) for t in qs[i].elems]
            edges[(labels[i], labels[j])] = [projs[j](r) for r in reps]
    bottom = labels[ideals.index(max(ideals, key=len))]
    D = build_diagram(DiagramCandidate(f"M({R.name})", nodes, bottom, edges))
    return MRDiagram(R, list(ideals), labels, list(qs), list(projs), D)


@dataclass
class GreatestJ:
    ideal: object = None            # inclusion-smallest ideal in J, when it exists
    maximal: tuple = ()             # inclusion-minimal members of J
    members: tuple = ()             # all of J

    def __bool__(self):
        return self.ideal is not None


def _unit_mod(R, x, I):
    """Whether x + I is a unit of R/I: some y has x*y - 1 in I."""
    target = R.add[R.mul[x], R.neg[R.one]]
    return any(int(v) in I for v in target)


def greatest_J_in_MR(R, x, base=None, ideals=None):
    """Smallest ideal I containing ``base`` with x + I invertible in R/I.

    Scans the ideal lattice directly, independently of any meadow tables.
    """
    if isinstance(x, str):
        x = R.index(x)
    ideals = ideals if ideals is not None else enumerate_ideals(R)
    if base is None:
        base = ideals[0]
    J = [I for I in ideals if base.issubset(I) and _unit_mod(R, x, I)]
    least = [I for I in J if all(I.issubset(K) for K in J)]
    minimal = tuple(I for I in J if not any(K != I and K.issubset(I) for K in J))
    return GreatestJ(least[0] if least else None, minimal, tuple(J))


def complement_indicator(R, x):
    """For a product of fields: the element that is 1 exactly where x is 0."""
    if isinstance(x, str):
        x = R.index(x)
    if not R.factors:
        if not is_field(R):
            raise DomainError(f"{R.name} is neither a field nor a product ring")
        return R.one if x == R.zero else R.zero
    cs = R.coords[x]
    b = tuple(F.one if c == F.zero else F.zero for F, c in zip(R.factors, cs))
    return R.coords.index(b)


def recipe_ideal(R, x):
    return principal_ideal(R, complement_indicator(R, x))


@dataclass
class MRCommonReport:
    common: bool
    failures: list = field(default_factory=list)     # elements without a greatest J node
    mismatches: list = field(default_factory=list)   # direct ideal scan vs meadow J scan

    def __bool__(self):
        return self.common and not self.mismatches


def verify_MR_common(R, mr=None):
    """Whether M(R) is a common meadow, with the ideal-lattice scan of
    :func:`greatest_J_in_MR` cross-checked against the meadow's own J_x for
    every carrier element."""
    mr = mr or build_MR(R)
    M = mr.meadow()
    res = synthesize_inverse(M)
    out = MRCommonReport(res.ok, [M.elems[x] for x, _ in res.failures])
    fb = fibers(M)
    for z in M.nodes:
        I = mr.ideal_of(node_name(M, z))
        for x in fb[z]:
            r = R.index(M.elems[x].split(".", 1)[1])
            gj = greatest_J_in_MR(R, r, base=I, ideals=mr.ideals)
            g = greatest_node(M, compute_J(M, x))
            via_meadow = None if g is None else node_name(M, g)
            via_ideals = None if gj.ideal is None else mr.node_of(gj.ideal)
            if via_meadow != via_ideals:
                out.mismatches.append((M.elems[x], via_ideals, via_meadow))
    return out
