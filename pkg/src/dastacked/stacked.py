"""The (D,A)-stacked degree pattern and the classifier shared by both resolvers."""

from __future__ import annotations

from dataclasses import dataclass


def delta(n: int, D: int, A: int) -> int:
    if n == 0:
        return 0
    if n == 1:
        return 1
    if n % 2 == 0:
        return n * D // 2
    return (n - 1) * D // 2 + A


@dataclass
class Classification:
    verdict: str            # Koszul | DKoszul | DAStacked | NotStacked | UndeterminedBeyond
    D: int | None = None
    A: int | None = None
    checked_to: int = 0
    gldim: int | None = None
    witness: dict | None = None
    note: str = ""

    def describe(self) -> str:
        if self.verdict == "Koszul":
            s = "Koszul D=2 A=1"
        elif self.verdict == "DKoszul":
            s = f"DKoszul D={self.D} A=1"
        elif self.verdict == "DAStacked":
            s = f"DAStacked D={self.D} A={self.A}"
        elif self.verdict == "NotStacked":
            w = self.witness or {}
            return f"NotStacked at n={w.get('n')} (degrees {w.get('degrees')})"
        else:
            return f"UndeterminedBeyond n={self.checked_to}"
        if self.gldim is not None:
            return f"{s}, global dimension {self.gldim}"
        return f"{s}, verified to n={self.checked_to}"

    @property
    def stacked(self) -> bool:
        return self.verdict in ("Koszul", "DKoszul", "DAStacked")

    def table(self) -> list:
        if not self.stacked:
            return []
        top = self.checked_to if self.gldim is None else self.gldim
        return [delta(n, self.D, self.A) for n in range(top + 1)]


def classify_degrees(levels: list[list[int]], terminated: bool) -> Classification:
    """Classify from the generator degrees of P^0, P^1, ....

    ``terminated`` means the last listed level is empty (so global
    dimension is the index of the last non-empty level).
    """
    checked = len(levels) - 1
    for n, degs in enumerate(levels):
        if len(set(degs)) > 1:
            return Classification("NotStacked", checked_to=n,
                                  witness={"n": n, "degrees": sorted(set(degs))})
    nonempty = [n for n, d in enumerate(levels) if d]
    gldim = (nonempty[-1] if nonempty else 0) if terminated else None
    top = gldim if gldim is not None else checked
    lv = {n: levels[n][0] for n in range(top + 1) if levels[n]}

    if top <= 1:
        if gldim is None:
            return Classification("UndeterminedBeyond", checked_to=checked)
        return Classification("Koszul", 2, 1, checked, gldim,
                              note="hereditary: no relations, every (D,A) pattern holds vacuously")
    D = lv[2]
    if D < 2:
        return Classification("NotStacked", checked_to=2, witness={"n": 2, "degrees": [D]})
    if top == 2:
        if gldim is None:
            return Classification("UndeterminedBeyond", D=D, checked_to=checked)
        v = "Koszul" if D == 2 else "DKoszul"
        return Classification(v, D, 1, checked, gldim,
                              note="global dimension 2: A is not determined; reported as A=1")
    A = lv[3] - D
    if A < 1:
        return Classification("NotStacked", checked_to=3, witness={"n": 3, "degrees": [lv[3]]})
    for n in range(top + 1):
        if n in lv and lv[n] != delta(n, D, A):
            return Classification("NotStacked", D=D, A=A, checked_to=n,
                                  witness={"n": n, "degrees": [lv[n]], "expected": delta(n, D, A)})
    if D == 2 and A == 1:
        v = "Koszul"
    elif A == 1:
        v = "DKoszul"
    else:
        v = "DAStacked"
    return Classification(v, D, A, checked, gldim)
