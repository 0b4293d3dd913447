from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple = ()
    detail: str = ""

    def __str__(self):
        s = f"{self.law}: witness ({', '.join(map(str, self.witness))})"
        if self.detail:
            s += f"; {self.detail}"
        return s


@dataclass
class Report:
    """Outcome of a validator.

    ``checked`` lists the laws that were examined, in order; ``violations``
    holds at most one entry per law.  Truthiness is the pass/fail verdict.
    """

    subject: str
    checked: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def failed(self, law):
        return any(v.law == law for v in self.violations)

    def violation(self, law):
        for v in self.violations:
            if v.law == law:
                return v
        return None

    def __str__(self):
        if self.ok:
            return f"{self.subject}: pass"
        return f"{self.subject}: fail; " + "; ".join(map(str, self.violations))
