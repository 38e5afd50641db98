"""Formal basis changes acting on deformations.

A gauge transform is s = id + w with w a parameter-series-valued linear map
whose coefficients all vanish at the parameter origin, so s is formally
invertible.  It acts on a total structure phi = phi0 + chi by
(s . phi)(x, y) = s(phi(s^-1 x, s^-1 y)); the induced action on the
deformation part chi is what ``gauge_act`` returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cochain import Cochain, CochainKey
from .liealg import LieAlgebra
from .series import TruncatedSeries

SeriesMatrix = list[list[TruncatedSeries]]


@dataclass
class DeformationSeries:
    """A degree-2 cochain whose entries are truncated parameter series."""

    dim: int
    params: tuple[str, ...]
    order: int
    entries: dict[CochainKey, TruncatedSeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.params = tuple(self.params)
        clean = {}
        for (args, out), s in self.entries.items():
            args = tuple(args)
            if len(args) != 2 or not (1 <= args[0] < args[1] <= self.dim):
                raise ValueError(f"bad deformation key {args}")
            if s.variables != self.params or s.order != self.order:
                raise ValueError("series shape mismatch in deformation entries")
            if not s.is_zero:
                clean[(args, out)] = s
        self.entries = clean

    @staticmethod
    def from_cochain(c: Cochain, params: tuple[str, ...], order: int) -> "DeformationSeries":
        entries = {
            k: TruncatedSeries(params, order, {tuple([0] * len(params)): v})
            for k, v in c.entries.items()
        }
        return DeformationSeries(c.dim, params, order, entries)

    def evaluate(self, point: dict[str, Fraction]) -> Cochain:
        entries: dict[CochainKey, Fraction] = {}
        for key, s in self.entries.items():
            val = Fraction(0)
            for e, c in s.terms.items():
                prod = c
                for v, n in zip(self.params, e):
                    if n:
                        prod *= Fraction(point[v]) ** n
                val += prod
            if val != 0:
                entries[key] = val
        return Cochain(self.dim, 2, entries)

    def coefficient(self, key: CochainKey) -> TruncatedSeries:
        return self.entries.get(key, TruncatedSeries.zero(self.params, self.order))

    def __add__(self, other: "DeformationSeries") -> "DeformationSeries":
        if (self.dim, self.params, self.order) != (other.dim, other.params, other.order):
            raise ValueError("deformation shapes differ")
        out = dict(self.entries)
        for k, s in other.entries.items():
            t = out.get(k)
            out[k] = s if t is None else t + s
        return DeformationSeries(self.dim, self.params, self.order, out)


@dataclass
class GaugeTransform:
    """s = id + w, with w[(a, b)] the series coefficient of e_b in s(e_a) - e_a."""

    dim: int
    params: tuple[str, ...]
    order: int
    w: dict[tuple[int, int], TruncatedSeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.params = tuple(self.params)
        clean = {}
        for (a, b), s in self.w.items():
            if not (1 <= a <= self.dim and 1 <= b <= self.dim):
                raise ValueError(f"bad gauge entry ({a}, {b})")
            if s.variables != self.params or s.order != self.order:
                raise ValueError("series shape mismatch in gauge entries")
            if s.constant_term() != 0:
                raise ValueError("gauge entries must vanish at the parameter origin")
            if not s.is_zero:
                clean[(a, b)] = s
        self.w = clean

    @staticmethod
    def identity(dim: int, params: tuple[str, ...], order: int) -> "GaugeTransform":
        return GaugeTransform(dim, tuple(params), order, {})

    # ------------------------------------------------------------------
    def _zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.params, self.order)

    def _one(self) -> TruncatedSeries:
        return TruncatedSeries.const(self.params, self.order, 1)

    def matrix(self) -> SeriesMatrix:
        """Full matrix of s: entry [b][a] is the e_b coefficient of s(e_a)."""
        m = self.dim
        mat = [[self._zero() for _ in range(m)] for _ in range(m)]
        for i in range(m):
            mat[i][i] = self._one()
        for (a, b), s in self.w.items():
            mat[b - 1][a - 1] = mat[b - 1][a - 1] + s
        return mat

    @staticmethod
    def from_matrix(
        dim: int, params: tuple[str, ...], order: int, mat: SeriesMatrix
    ) -> "GaugeTransform":
        w = {}
        for a in range(dim):
            for b in range(dim):
                s = mat[b][a]
                if a == b:
                    s = s - TruncatedSeries.const(params, order, 1)
                if not s.is_zero:
                    w[(a + 1, b + 1)] = s
        return GaugeTransform(dim, params, order, w)

    def compose(self, other: "GaugeTransform") -> "GaugeTransform":
        """The transform doing ``other`` first, then ``self``."""
        if (self.dim, self.params, self.order) != (other.dim, other.params, other.order):
            raise ValueError("gauge shapes differ")
        a = self.matrix()
        b = other.matrix()
        m = self.dim
        prod = [[self._zero() for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for j in range(m):
                acc = self._zero()
                for k in range(m):
                    acc = acc + a[i][k] * b[k][j]
                prod[i][j] = acc
        return GaugeTransform.from_matrix(self.dim, self.params, self.order, prod)

    def inverse(self) -> "GaugeTransform":
        """(id + w)^-1 = id + sum_k (-w)^k, truncated by parameter order."""
        m = self.dim
        w_mat = [[self._zero() for _ in range(m)] for _ in range(m)]
        for (a, b), s in self.w.items():
            w_mat[b - 1][a - 1] = s
        total = [[self._zero() for _ in range(m)] for _ in range(m)]
        for i in range(m):
            total[i][i] = self._one()
        power = [row[:] for row in total]
        for _ in range(self.order):
            nxt = [[self._zero() for _ in range(m)] for _ in range(m)]
            all_zero = True
            for i in range(m):
                for j in range(m):
                    acc = self._zero()
                    for k in range(m):
                        acc = acc - power[i][k] * w_mat[k][j]
                    nxt[i][j] = acc
                    if not acc.is_zero:
                        all_zero = False
            power = nxt
            if all_zero:
                break
            for i in range(m):
                for j in range(m):
                    total[i][j] = total[i][j] + power[i][j]
        return GaugeTransform.from_matrix(self.dim, self.params, self.order, total)


def gauge_act(s: GaugeTransform, L: LieAlgebra, chi: DeformationSeries) -> DeformationSeries:
    """Transport of the deformation chi of L by the gauge s.

    Computes s(phi(s^-1 x, s^-1 y)) - phi0 entrywise, with phi = phi0 + chi.
    """
    if chi.dim != s.dim or chi.params != s.params or chi.order != s.order:
        raise ValueError("gauge and deformation shapes differ")
    m = s.dim
    order = s.order
    params = s.params
    zero = TruncatedSeries.zero(params, order)

    s_mat = s.matrix()
    sinv_mat = s.inverse().matrix()

    def phi_series(p: int, q: int) -> dict[int, TruncatedSeries]:
        """phi(e_p, e_q) with phi = phi0 + chi, as output-index series."""
        out: dict[int, TruncatedSeries] = {}
        if p == q:
            return out
        sign = 1
        if p > q:
            p, q = q, p
            sign = -1
        for k, c in L.bracket_basis(p, q).items():
            out[k] = TruncatedSeries.const(params, order, sign * c)
        for l in range(1, m + 1):
            sval = chi.entries.get(((p, q), l))
            if sval is not None:
                cur = out.get(l, zero)
                out[l] = cur + (sval if sign == 1 else -sval)
        return {k: v for k, v in out.items() if not v.is_zero}

    entries: dict[CochainKey, TruncatedSeries] = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            # u = s^-1 e_i, v = s^-1 e_j: column coefficients
            acc: dict[int, TruncatedSeries] = {}
            for p in range(1, m + 1):
                a = sinv_mat[p - 1][i - 1]
                if a.is_zero:
                    continue
                for q in range(1, m + 1):
                    b = sinv_mat[q - 1][j - 1]
                    if b.is_zero:
                        continue
                    coeff = a * b
                    if coeff.is_zero:
                        continue
                    for k, val in phi_series(p, q).items():
                        cur = acc.get(k, zero)
                        acc[k] = cur + coeff * val
            # apply s, subtract phi0(e_i, e_j)
            result: dict[int, TruncatedSeries] = {}
            for k, val in acc.items():
                if val.is_zero:
                    continue
                for b in range(1, m + 1):
                    c = s_mat[b - 1][k - 1]
                    if c.is_zero:
                        continue
                    cur = result.get(b, zero)
                    result[b] = cur + c * val
            for k, c in L.bracket_basis(i, j).items():
                cur = result.get(k, zero)
                result[k] = cur - TruncatedSeries.const(params, order, c)
            for k, val in result.items():
                if not val.is_zero:
                    entries[((i, j), k)] = val
    return DeformationSeries(m, params, order, entries)
