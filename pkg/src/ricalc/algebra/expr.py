"""Resource symbols, expressions and inequalities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import NegativeScale, ParseError, SchemaMismatch
from .basis import EMPTY_BASIS, IdentityBasis
from .certify import is_negative, is_nonneg
from .coefficient import ONE, ZERO, Coefficient

UNIT_TEXT = {
    "cbit": "c->c", "qubit": "q->q", "ebit": "qq", "rbit": "cc", "cobit": "q->qq",
    "cbit_tau": "c->c:tau", "qubit_tau": "q->q:tau", "cobit_tau": "q->qq:tau",
}
UNIT_KINDS = frozenset(UNIT_TEXT)
TEXT_UNIT = {v: k for k, v in UNIT_TEXT.items()}
NOISY_KINDS = frozenset({"static", "dynamic", "protected"})
#: symbols whose terms may carry decoupling flags
CLASSICAL_KINDS = frozenset({"cbit", "rbit", "cbit_tau"})
#: symbols whose simulated resource is pure (used by derandomization)
PURE_UNIT_KINDS = frozenset({"qubit", "ebit", "cobit", "qubit_tau", "cobit_tau"})
TAU_OF = {"cbit": "cbit_tau", "qubit": "qubit_tau", "cobit": "cobit_tau"}

_KIND_ORDER = {k: i for i, k in enumerate(
    ["static", "dynamic", "protected", "qubit", "qubit_tau", "cobit", "cobit_tau",
     "cbit", "cbit_tau", "ebit", "rbit"])}

FLAGS = ("none", "incoherent", "coherent")
FLAG_TEXT = {"incoherent": "!inc", "coherent": "!coh"}


@dataclass(frozen=True)
class ResourceSymbol:
    """A unit resource or a named noisy resource.

    ``static``: <rho>; ``dynamic``: <N> or, with a test state, <N:omega>;
    ``protected``: {N:rho} (a source-protected relative resource).
    """

    kind: str
    name: str | None = None
    test: str | None = None
    bound: object = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind in UNIT_KINDS:
            if self.name is not None or self.test is not None:
                raise ParseError("unit resources carry no name")
        elif self.kind in NOISY_KINDS:
            if not self.name:
                raise ParseError(f"{self.kind} resources need a name")
            if self.kind == "static" and self.test is not None:
                raise ParseError("static resources have no test state")
            if self.kind == "protected" and not self.test:
                raise ParseError("protected resources need a source state")
        else:
            raise ParseError(f"unknown resource kind {self.kind!r}")

    @property
    def is_unit(self) -> bool:
        return self.kind in UNIT_KINDS

    @property
    def is_classical(self) -> bool:
        return self.kind in CLASSICAL_KINDS

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.name or "", self.test or "")

    def rename(self, symbols: dict | None) -> "ResourceSymbol":
        if not symbols or self.is_unit:
            return self
        key = str(self)
        if key in symbols:
            from .grammar import parse_symbol
            return parse_symbol(symbols[key])
        name = symbols.get(self.name, self.name)
        test = symbols.get(self.test, self.test) if self.test else None
        return ResourceSymbol(self.kind, name, test)

    def __str__(self):
        if self.is_unit:
            return f"[{UNIT_TEXT[self.kind]}]"
        if self.kind == "static":
            return f"<{self.name}>"
        if self.kind == "dynamic":
            return f"<{self.name}:{self.test}>" if self.test else f"<{self.name}>"
        return f"{{{self.name}:{self.test}}}"

    __repr__ = __str__


def unit(kind: str) -> ResourceSymbol:
    return ResourceSymbol(kind)


CBIT, QUBIT, EBIT, RBIT, COBIT = (unit(k) for k in ("cbit", "qubit", "ebit", "rbit", "cobit"))


class ResourceExpr:
    """Coefficient-weighted bag of resources with o- and infinity-parts.

    Construction merges like terms syntactically and drops terms whose
    coefficient is syntactically zero; ``normalize`` additionally works
    modulo an identity basis.
    """

    __slots__ = ("terms", "o_terms", "inf_terms")

    def __init__(self, terms=None, o_terms=(), inf_terms=()):
        merged: dict = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for sym, c in items:
            merged[sym] = merged.get(sym, ZERO) + Coefficient.of(c)
        inf = frozenset(inf_terms)
        self.inf_terms = inf
        self.terms = tuple(sorted(((s, c) for s, c in merged.items()
                                   if not c.is_syntactic_zero and s not in inf),
                                  key=lambda t: t[0].sort_key()))
        finite = {s for s, _ in self.terms}
        self.o_terms = frozenset(o_terms) - finite - inf

    @classmethod
    def of(cls, sym: ResourceSymbol, coef=1) -> "ResourceExpr":
        return cls({sym: coef})

    @property
    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self.terms) | self.o_terms | self.inf_terms

    def coef(self, sym) -> Coefficient:
        for s, c in self.terms:
            if s == sym:
                return c
        return ZERO

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_empty(self) -> bool:
        return not self.terms and not self.o_terms and not self.inf_terms

    def is_null(self) -> bool:
        """No finite or infinite part (o-terms allowed)."""
        return not self.terms and not self.inf_terms

    # arithmetic
    def __add__(self, other: "ResourceExpr") -> "ResourceExpr":
        return ResourceExpr(list(self.terms) + list(other.terms),
                            self.o_terms | other.o_terms, self.inf_terms | other.inf_terms)

    def __neg__(self) -> "ResourceExpr":
        if self.o_terms or self.inf_terms:
            raise SchemaMismatch("cannot negate o- or infinite terms")
        return ResourceExpr([(s, -c) for s, c in self.terms])

    def plain_sub(self, other: "ResourceExpr") -> "ResourceExpr":
        """Coefficient-wise difference without o-residue."""
        return self + (-ResourceExpr(other.terms))

    def __sub__(self, other: "ResourceExpr") -> "ResourceExpr":
        """Difference in the calculus: ``a - b`` keeps ``o b`` (so a - a = o a)."""
        return ResourceExpr(list(self.terms) + [(s, -c) for s, c in other.terms],
                            self.o_terms | other.symbols, self.inf_terms)

    def scale_unchecked(self, z) -> "ResourceExpr":
        z = Coefficient.of(z)
        if z.is_syntactic_zero:
            return ResourceExpr()
        return ResourceExpr([(s, z * c) for s, c in self.terms], self.o_terms, self.inf_terms)

    def map_coefficients(self, fn) -> "ResourceExpr":
        return ResourceExpr([(s, fn(c)) for s, c in self.terms], self.o_terms, self.inf_terms)

    def map_symbols(self, fn) -> "ResourceExpr":
        return ResourceExpr([(fn(s), c) for s, c in self.terms],
                            {fn(s) for s in self.o_terms}, {fn(s) for s in self.inf_terms})

    def rename(self, symbols=None, labels=None, tags=None) -> "ResourceExpr":
        return ResourceExpr([(s.rename(symbols), c.rename(labels, tags)) for s, c in self.terms],
                            {s.rename(symbols) for s in self.o_terms},
                            {s.rename(symbols) for s in self.inf_terms})

    def tags(self) -> frozenset:
        return frozenset().union(*(c.tags for _, c in self.terms)) if self.terms else frozenset()

    # identity
    def _key(self):
        return (self.terms, self.o_terms, self.inf_terms)

    def __eq__(self, other):
        return isinstance(other, ResourceExpr) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        from .grammar import format_expr
        return format_expr(self)

    def __repr__(self):
        return f"ResourceExpr({self})"


def add(a: ResourceExpr, b: ResourceExpr, basis: IdentityBasis = EMPTY_BASIS) -> ResourceExpr:
    return normalize(a + b, basis)


def scale(z, a: ResourceExpr, basis: IdentityBasis = EMPTY_BASIS) -> ResourceExpr:
    """z * a for a nonnegative-certified z; atom * atom is refused."""
    z = Coefficient.of(z)
    if not is_nonneg(z, basis):
        raise NegativeScale(f"scaling factor {z} is not certified nonnegative")
    return normalize(a.scale_unchecked(z), basis)


def normalize(a: ResourceExpr, basis: IdentityBasis = EMPTY_BASIS) -> ResourceExpr:
    """Apply resource rewrites, drop coefficients that vanish modulo ``basis``,
    let finite and infinite terms absorb o-terms, and simplify coefficients."""
    # rewrites do not take part in basis equality, so they are keyed separately
    return _normalize_cached(a, basis, basis.rewrites)


@lru_cache(maxsize=16384)
def _normalize_cached(a: ResourceExpr, basis: IdentityBasis, rewrites) -> ResourceExpr:
    if rewrites:
        a = _apply_rewrites(a, basis)
    terms = []
    for s, c in a.terms:
        if basis.is_zero(c):
            continue
        terms.append((s, simplify(c, basis)))
    return ResourceExpr(terms, a.o_terms, a.inf_terms)


def _apply_rewrites(a: ResourceExpr, basis) -> ResourceExpr:
    rules = dict(basis.rewrites)
    out = ResourceExpr([], a.o_terms, a.inf_terms)
    for s, c in a.terms:
        if s in rules:
            out = out + rules[s].scale_unchecked(c)
        else:
            out = out + ResourceExpr([(s, c)])
    return out


def canonical_terms(a: ResourceExpr, basis: IdentityBasis) -> dict:
    out = {}
    for s, c in normalize(a, basis).terms:
        out[s] = basis.canonical(c)
    return out


def expr_equal(a: ResourceExpr, b: ResourceExpr, basis: IdentityBasis = EMPTY_BASIS) -> bool:
    na, nb = normalize(a, basis), normalize(b, basis)
    if na.o_terms != nb.o_terms or na.inf_terms != nb.inf_terms:
        return False
    return canonical_terms(na, basis) == canonical_terms(nb, basis)


def expr_leq(a: ResourceExpr, b: ResourceExpr, basis: IdentityBasis = EMPTY_BASIS):
    """Is ``a <= b`` coefficient-wise? Returns True, False, or None (unknown)."""
    na, nb = normalize(a, basis), normalize(b, basis)
    # infinite parts: a's infinite symbols need an infinite counterpart in b
    if not na.inf_terms <= nb.inf_terms:
        return False
    # o-parts: every o-term of a must be covered by some part of b
    if not na.o_terms <= nb.symbols:
        return False
    verdict = True
    for s in (nb.symbols | na.symbols) - nb.inf_terms:
        d = nb.coef(s) - na.coef(s)
        if basis.is_zero(d):
            continue
        if is_nonneg(d, basis):
            continue
        if is_negative(d, basis):
            return False
        verdict = None
    return verdict


def simplify(c: Coefficient, basis: IdentityBasis) -> Coefficient:
    """Rewrite a multi-atom coefficient as a single atom when one matches."""
    if len(c.atoms) < 2 or len(c.tags) != 1:
        return c
    return _simplify_cached(basis.contexts, c)


from functools import lru_cache  # noqa: E402


@lru_cache(maxsize=50_000)
def _simplify_cached(contexts, c: Coefficient) -> Coefficient:
    from .atoms import EntropicAtom
    from .basis import CONST, _canonical
    from .certify import _nonempty_subsets
    target = dict(_canonical(contexts, c))
    const = target.pop(CONST, Fraction(0))
    if not target:
        return Coefficient(const)
    tag = c.atoms[0][0].tag
    labels = frozenset().union(*(a.labels for a, _ in c.atoms))
    for ctx in contexts:
        if ctx.tag == tag:
            labels |= ctx.labels
    subsets = list(_nonempty_subsets(labels))
    cands = [EntropicAtom("H", (s,), tag) for s in subsets]
    for s in subsets:
        for t in subsets:
            if s & t:
                continue
            cands.append(EntropicAtom("Icoh", (s, t), tag))
            cands.append(EntropicAtom("Imutual", (s, t), tag))
            cands.append(EntropicAtom("Hcond", (s, t), tag))
    key_items = sorted(target.items(), key=lambda kv: (len(kv[0][1]), sorted(kv[0][1])))
    for cand in cands:
        v = dict(_canonical(contexts, Coefficient(0, {cand: 1})))
        if set(v) != set(target):
            continue
        k0, q0 = key_items[0]
        r = q0 / v[k0]
        if all(v[k] * r == q for k, q in target.items()):
            return Coefficient(const, {cand: r})
    return c


@dataclass(frozen=True)
class ResourceInequality:
    """``lhs relation rhs`` with decoupling flags and the basis it lives in.

    ``flags`` holds ((side, symbol), flag) pairs with side in {"lhs", "rhs"}
    and flag in {"incoherent", "coherent"}; only classical symbols may be
    flagged.
    """

    lhs: ResourceExpr
    rhs: ResourceExpr
    relation: str = ">="
    flags: tuple = ()
    basis: IdentityBasis = EMPTY_BASIS

    def __post_init__(self):
        if self.relation not in (">=", "=", ">=s"):
            raise ParseError(f"unknown relation {self.relation!r}")
        fl = {}
        for (side, sym), flag in (self.flags.items() if isinstance(self.flags, dict)
                                  else self.flags):
            if flag == "none":
                continue
            if flag not in FLAGS:
                raise ParseError(f"unknown decoupling flag {flag!r}")
            if not sym.is_classical:
                raise ParseError(f"decoupling flag on non-classical term {sym}")
            expr = self.lhs if side == "lhs" else self.rhs
            if sym in expr.symbols:
                fl[(side, sym)] = flag
        object.__setattr__(self, "flags", tuple(sorted(
            fl.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key()))))
        if self.relation == ">=s" and not any(
                s.kind == "protected" for s in self.lhs.symbols | self.rhs.symbols):
            raise ParseError("a source relation '>=s' needs a protected resource")

    def flag(self, side: str, sym: ResourceSymbol) -> str:
        return dict(self.flags).get((side, sym), "none")

    @property
    def flag_map(self) -> dict:
        return dict(self.flags)

    def replace(self, **kw) -> "ResourceInequality":
        d = dict(lhs=self.lhs, rhs=self.rhs, relation=self.relation, flags=self.flags,
                 basis=self.basis)
        d.update(kw)
        return ResourceInequality(**d)

    def normalized(self, basis: IdentityBasis | None = None) -> "ResourceInequality":
        b = self.basis if basis is None else basis
        return self.replace(lhs=normalize(self.lhs, b), rhs=normalize(self.rhs, b), basis=b)

    def __str__(self):
        from .grammar import format_ri
        return format_ri(self)


def ri_equal(a: ResourceInequality, b: ResourceInequality,
             basis: IdentityBasis | None = None, check_context: bool = True) -> bool:
    """Equality modulo normalization under the merged (or given) basis."""
    if a.relation != b.relation:
        return False
    if check_context and (set(a.basis.contexts) != set(b.basis.contexts)
                          or set(a.basis.facts) != set(b.basis.facts)):
        return False
    if basis is None:
        basis = a.basis.merge(b.basis)
    if a.flags != b.flags:
        return False
    if a.relation == "=":
        if expr_equal(a.lhs, b.lhs, basis) and expr_equal(a.rhs, b.rhs, basis):
            return True
        return expr_equal(a.lhs, b.rhs, basis) and expr_equal(a.rhs, b.lhs, basis)
    return expr_equal(a.lhs, b.lhs, basis) and expr_equal(a.rhs, b.rhs, basis)


def negative_normal_form(ri: ResourceInequality) -> ResourceInequality:
    """Move certifiably negative terms across: a - b >= a' - b' becomes
    a + b' + o b >= a' + b."""
    basis = ri.basis
    lhs_keep, rhs_keep, o_extra = [], [], set()
    to_rhs, to_lhs = [], []
    for s, c in normalize(ri.lhs, basis).terms:
        if not c.is_syntactic_zero and is_negative(c, basis):
            to_rhs.append((s, -c))
            o_extra.add(s)
        else:
            lhs_keep.append((s, c))
    for s, c in normalize(ri.rhs, basis).terms:
        if not c.is_syntactic_zero and is_negative(c, basis):
            to_lhs.append((s, -c))
        else:
            rhs_keep.append((s, c))
    if not to_rhs and not to_lhs:
        return ri.normalized()
    lhs = ResourceExpr(lhs_keep + to_lhs, ri.lhs.o_terms | o_extra, ri.lhs.inf_terms)
    rhs = ResourceExpr(rhs_keep + to_rhs, ri.rhs.o_terms, ri.rhs.inf_terms)
    return ri.replace(lhs=normalize(lhs, basis), rhs=normalize(rhs, basis))


def scale_ri(z, ri: ResourceInequality) -> ResourceInequality:
    return ri.replace(lhs=scale(z, ri.lhs, ri.basis), rhs=scale(z, ri.rhs, ri.basis))
