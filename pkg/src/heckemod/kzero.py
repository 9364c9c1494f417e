"""Grothendieck-group computations: classes of modules, the alternating
induction-restriction operator, standard modules and multiplicity matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .combinat import Composition, compositions_of
from .fields import Field, e_invariant
from .hecke import AFFINE
from .meataxe import SimpleRegistry
from .modules import Module, coinduce, make_character, outer_product, restrict, tau_twist
from .segments import Multisegment, enumerate_multisegments, preceq

__all__ = [
    "VirtualModule",
    "UNIT",
    "semisimplify",
    "kato_dual",
    "tau_class",
    "standard_module",
    "block_simples",
    "MultiplicityMatrix",
    "LabelingError",
    "multiplicity_matrix",
    "product_on_k0",
    "HECKE_SIGN",
    "GROUP_SIGN",
]

HECKE_SIGN = "hecke"  # (-1)^(n - r(gamma))
GROUP_SIGN = "group"  # (-1)^r(gamma)
UNIT_ID = "0:1"


class VirtualModule:
    """Finitely supported integer combination of simple ids."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs=None, degree: int | None = None):
        self.coeffs = {k: int(v) for k, v in dict(coeffs or {}).items() if v}
        self.degree = degree

    @classmethod
    def of(cls, ids, degree=None) -> "VirtualModule":
        out: dict[str, int] = {}
        for i in ids:
            out[i] = out.get(i, 0) + 1
        return cls(out, degree)

    def _combine(self, other, sign):
        if not isinstance(other, VirtualModule):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + sign * v
        return VirtualModule(out, self.degree if self.degree is not None else other.degree)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return VirtualModule({k: -v for k, v in self.coeffs.items()}, self.degree)

    def __mul__(self, k: int):
        return VirtualModule({i: k * v for i, v in self.coeffs.items()}, self.degree)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, VirtualModule) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __getitem__(self, sid):
        return self.coeffs.get(sid, 0)

    def __iter__(self):
        return iter(sorted(self.coeffs))

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_effective(self) -> bool:
        return all(v > 0 for v in self.coeffs.values())

    def single(self):
        """``sid`` when this is exactly one simple with coefficient 1, else ``None``."""
        if len(self.coeffs) == 1:
            (sid, c), = self.coeffs.items()
            if c == 1:
                return sid
        return None

    def dimension(self, reg: SimpleRegistry) -> int:
        return sum(c * (0 if i == UNIT_ID else reg.lookup(i).dim) for i, c in self.coeffs.items())

    def to_dict(self) -> dict:
        return dict(self.items())

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{i}]" for i, c in self.items())


UNIT = VirtualModule({UNIT_ID: 1}, 0)


def semisimplify(m: Module, reg: SimpleRegistry) -> VirtualModule:
    return VirtualModule.of(reg.factor(m), m.n)


def tau_class(m: Module, reg: SimpleRegistry) -> VirtualModule:
    return semisimplify(tau_twist(m), reg)


def _sign(n: int, gamma: Composition, convention: str) -> int:
    if convention == HECKE_SIGN:
        return (-1) ** (n - gamma.r)
    if convention == GROUP_SIGN:
        return (-1) ** gamma.r
    raise ValueError(f"unknown sign convention {convention!r}")


def _induced_class(sid: str, reg: SimpleRegistry) -> VirtualModule:
    cache = reg.induced
    if sid not in cache:
        cache[sid] = semisimplify(coinduce(reg.lookup(sid)), reg)
    return cache[sid]


def kato_dual(m: Module, reg: SimpleRegistry, convention: str = HECKE_SIGN, direct: bool = False) -> VirtualModule:
    """``sum over gamma of sign(gamma) [coinduce(restrict(m, gamma))]``.

    By default each restriction is first broken into simples of the parabolic
    subalgebra and the coinduced classes of those simples are reused; this is
    legitimate because coinduction is exact.  ``direct=True`` factors every
    coinduced module as it stands.
    """
    if not m.is_full:
        raise ValueError("the operator is defined on modules over the full algebra")
    n = m.n
    total = VirtualModule({}, n)
    for gamma in compositions_of(n):
        sign = _sign(n, gamma, convention)
        if gamma.r == 1:
            part = semisimplify(m, reg)
        elif direct:
            part = semisimplify(coinduce(restrict(m, gamma)), reg)
        else:
            part = VirtualModule({}, n)
            for sid in reg.factor(restrict(m, gamma)):
                part = part + _induced_class(sid, reg)
        total = total + part * sign
    return total


def standard_module(mu: Multisegment, u, F: Field, flavor: str = AFFINE) -> Module:
    """Outer product of the Z-type characters of the segments of ``mu``."""
    if not mu.segments:
        raise ValueError("the empty multisegment has no module")
    chars = [make_character("Z", s.length, s.start, u, F, flavor) for s in mu]
    return outer_product(*chars)


def block_simples(n: int, u, F: Field, support, reg: SimpleRegistry, flavor: str = AFFINE) -> list[str]:
    """Ids of all simples occurring in standard modules of the given support."""
    e = e_invariant(F(u), F)
    seen: list[str] = []
    for mu in enumerate_multisegments(n, e, support=support):
        for sid in reg.factor(standard_module(mu, u, F, flavor)):
            if sid not in seen:
                seen.append(sid)
    return seen


class LabelingError(RuntimeError):
    pass


@dataclass
class MultiplicityMatrix:
    multisegments: list  # aperiodic, coarsest first
    labels: dict  # Multisegment -> simple id
    entries: dict  # (mu, nu) -> int
    e: int

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def violations(self) -> list[str]:
        """Breaches of unit diagonal and of triangularity; equal length profiles
        with different multisegments count as incomparable."""
        bad = []
        for mu in self.multisegments:
            if self[(mu, mu)] != 1:
                bad.append(f"diagonal at {mu} is {self[(mu, mu)]}")
            for nu in self.multisegments:
                if nu == mu or not self[(mu, nu)]:
                    continue
                if not preceq(mu, nu) or mu.lengths() == nu.lengths():
                    bad.append(f"m({mu},{nu}) = {self[(mu, nu)]} but {mu} is not below {nu}")
        return bad

    def by_label(self) -> dict:
        return {(str(mu), str(nu)): self[(mu, nu)] for mu in self.multisegments for nu in self.multisegments}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mu\\nu"] + [str(nu) for nu in self.multisegments])
        for mu in self.multisegments:
            w.writerow([str(mu)] + [self[(mu, nu)] for nu in self.multisegments])
        return buf.getvalue()

    def to_json(self) -> str:
        names = [str(m) for m in self.multisegments]
        return json.dumps(
            {
                "e": self.e,
                "multisegments": names,
                "labels": {str(k): v for k, v in self.labels.items()},
                "matrix": [[self[(mu, nu)] for nu in self.multisegments] for mu in self.multisegments],
            }
        )


def multiplicity_matrix(n: int, u, F: Field, support, reg: SimpleRegistry, flavor: str = AFFINE) -> MultiplicityMatrix:
    """Multiplicities of labelled simples in the aperiodic standard modules.

    ``L_nu`` is the simple of multiplicity one in ``M_nu`` that occurs in an
    aperiodic ``M_mu`` only when ``mu`` is below ``nu``.
    """
    e = e_invariant(F(u), F)
    mus = enumerate_multisegments(n, e, support=support, aperiodic_only=True)
    classes = {mu: semisimplify(standard_module(mu, u, F, flavor), reg) for mu in mus}
    labels: dict = {}
    taken: set = set()
    for nu in mus:
        ok = [
            sid
            for sid, c in classes[nu].items()
            if c == 1 and sid not in taken and all(preceq(mu, nu) for mu in mus if classes[mu][sid])
        ]
        if len(ok) > 1:
            # ties in the length profile do not order anything
            ok = [
                sid
                for sid in ok
                if all(mu == nu or mu.lengths() != nu.lengths() for mu in mus if classes[mu][sid])
            ]
        if len(ok) != 1:
            raise LabelingError(
                f"no unique label for {nu}: candidates {ok}; class of M_nu is {classes[nu]!r}"
            )
        labels[nu] = ok[0]
        taken.add(ok[0])
    entries = {(mu, nu): classes[mu][labels[nu]] for mu in mus for nu in mus if classes[mu][labels[nu]]}
    return MultiplicityMatrix(mus, labels, entries, e)


def product_on_k0(a: VirtualModule, b: VirtualModule, reg: SimpleRegistry) -> VirtualModule:
    """Bilinear extension of ``[s] * [t] = [s x t]``."""
    deg = None if a.degree is None or b.degree is None else a.degree + b.degree
    total = VirtualModule({}, deg)
    for s, x in a.items():
        for t, y in b.items():
            if s == UNIT_ID:
                part = VirtualModule({t: 1}, deg)
            elif t == UNIT_ID:
                part = VirtualModule({s: 1}, deg)
            else:
                part = semisimplify(outer_product(reg.lookup(s), reg.lookup(t)), reg)
            total = total + part * (x * y)
    return total
