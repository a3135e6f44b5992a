"""Check reports: named pass/fail entries with exact residual ranks."""


class CheckEntry:
    __slots__ = ("name", "anchor", "passed", "residual_rank", "detail")

    def __init__(self, name, anchor, passed, residual_rank=0, detail=""):
        self.name = name
        self.anchor = anchor
        self.passed = bool(passed)
        self.residual_rank = residual_rank
        self.detail = detail

    def as_dict(self):
        d = {"name": self.name, "anchor": self.anchor, "pass": self.passed,
             "residual_rank": self.residual_rank}
        if self.detail:
            d["detail"] = self.detail
        return d


class Report:
    def __init__(self, title=""):
        self.title = title
        self.entries = []

    def add(self, name, anchor, passed, residual_rank=0, detail=""):
        self.entries.append(CheckEntry(name, anchor, passed, residual_rank, detail))
        return passed

    def add_map_eq(self, name, anchor, lhs, rhs, detail=""):
        """Record exact equality of two matrices; residual rank on failure."""
        diff = lhs - rhs
        ok = diff.is_zero()
        self.entries.append(CheckEntry(name, anchor, ok, 0 if ok else diff.rank(), detail))
        return ok

    def extend(self, other, prefix=""):
        for e in other.entries:
            self.entries.append(CheckEntry(
                prefix + e.name if prefix else e.name,
                e.anchor, e.passed, e.residual_rank, e.detail))

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def as_dict(self):
        return {"title": self.title, "pass": self.passed,
                "checks": [e.as_dict() for e in self.entries]}

    def __repr__(self):
        n = len(self.entries)
        bad = len(self.failures())
        return "Report(%s: %d checks, %d failing)" % (self.title, n, bad)
