"""Text grammar for resource expressions and inequalities.

Whitespace is ignored. Informally::

    ri      := expr REL expr ["where" item (";" item)*]
    REL     := ">=s" | ">=" | "="
    expr    := "0" | ["-"] term (("+" | "-") term)*
    term    := "o" symbol | "inf" symbol | [coef] symbol [flag]
    coef    := number ["*"] [atom] | atom | "(" csum ")"
    csum    := ["-"] cterm (("+" | "-") cterm)*        cterm := [number] [atom]
    number  := INT ["/" INT] | DECIMAL
    atom    := "H(" grp ")@" tag | "H(" grp "|" grp ")@" tag
             | "I(" grp ";" grp ")@" tag | "I(" grp ";" grp "|" grp ")@" tag
             | "Icoh(" grp ">" grp ")@" tag
    symbol  := "[c->c]" | "[q->q]" | "[qq]" | "[cc]" | "[q->qq]"
             | "[c->c:tau]" | "[q->q:tau]" | "[q->qq:tau]"
             | "<" name ">" | "<" name ":" name ">" | "{" name ":" name "}"
    flag    := "!coh" | "!inc"
    item    := tag "=" "pure(" labels ["|" labels] ")" | csum (">" | ">=") number

Example: ``2[c->c] + 1/2 I(A;E)@psi [qq] + o[cc] >= [q->q]``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from ..errors import ParseError
from .atoms import EntropicAtom, split_labels
from .basis import Fact, IdentityBasis, StateContext
from .coefficient import Coefficient, fraction_str
from .expr import (FLAG_TEXT, TEXT_UNIT, ResourceExpr, ResourceInequality,
                   ResourceSymbol)

GRAMMAR_HELP = __doc__

_NUM = re.compile(r"\d+(?:\.\d+)?(?:/\d+)?")
_TAG = re.compile(r"[a-z][A-Za-z0-9_]*")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_']*")
_GROUP = re.compile(r"[A-Za-z0-9_',]+")


class _Parser:
    def __init__(self, text: str):
        self.src = text
        self.s = re.sub(r"\s+", "", text)
        self.i = 0

    # helpers
    def peek(self, lit: str) -> bool:
        return self.s.startswith(lit, self.i)

    def eat(self, lit: str) -> bool:
        if self.peek(lit):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit: str):
        if not self.eat(lit):
            self.fail(f"expected {lit!r}")

    def match(self, rx):
        m = rx.match(self.s, self.i)
        if not m:
            return None
        self.i = m.end()
        return m.group()

    def fail(self, msg):
        ctx = self.s[self.i:self.i + 20]
        raise ParseError(f"{msg} at position {self.i} (near {ctx!r}) in {self.src!r}")

    def done(self) -> bool:
        return self.i >= len(self.s)

    # numbers and atoms
    def number(self):
        tok = self.match(_NUM)
        if tok is None:
            return None
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            self.fail(f"bad number {tok!r}")

    def at_atom(self) -> bool:
        return self.peek("H(") or self.peek("I(") or self.peek("Icoh(")

    def group(self):
        tok = self.match(_GROUP)
        if not tok:
            self.fail("expected a label group")
        return split_labels(tok)

    def atom(self) -> EntropicAtom:
        if self.eat("Icoh("):
            a = self.group()
            self.expect(">")
            b = self.group()
            kind, groups = "Icoh", (a, b)
        elif self.eat("H("):
            a = self.group()
            if self.eat("|"):
                kind, groups = "Hcond", (a, self.group())
            else:
                kind, groups = "H", (a,)
        elif self.eat("I("):
            a = self.group()
            self.expect(";")
            b = self.group()
            if self.eat("|"):
                kind, groups = "Icmi", (a, b, self.group())
            else:
                kind, groups = "Imutual", (a, b)
        else:
            self.fail("expected an entropic atom")
        self.expect(")")
        self.expect("@")
        tag = self.match(_TAG)
        if not tag:
            self.fail("expected a state tag after '@'")
        return EntropicAtom(kind, groups, tag)

    def cterm(self) -> Coefficient:
        q = self.number()
        if self.at_atom():
            self.eat("*")
            a = self.atom()
            return Coefficient(0, {a: 1 if q is None else q})
        if q is None:
            self.fail("expected a number or an atom")
        return Coefficient(q)

    def csum(self) -> Coefficient:
        neg = self.eat("-")
        c = self.cterm()
        if neg:
            c = -c
        while True:
            if self.peek("+"):
                self.i += 1
                c = c + self.cterm()
            elif self.peek("-") and not self.peek("->"):
                self.i += 1
                c = c - self.cterm()
            else:
                return c

    def coef(self):
        """Optional coefficient in front of a symbol; None if absent."""
        if self.eat("("):
            c = self.csum()
            self.expect(")")
            return c
        q = self.number()
        if self.peek("*") and q is not None:
            self.i += 1
        if self.at_atom():
            a = self.atom()
            return Coefficient(0, {a: 1 if q is None else q})
        return None if q is None else Coefficient(q)

    # symbols
    def at_symbol(self) -> bool:
        return self.peek("[") or self.peek("<") or self.peek("{")

    def symbol(self) -> ResourceSymbol:
        if self.eat("["):
            j = self.s.find("]", self.i)
            if j < 0:
                self.fail("unterminated unit resource")
            body = self.s[self.i:j]
            self.i = j + 1
            if body not in TEXT_UNIT:
                self.fail(f"unknown unit resource [{body}]")
            return ResourceSymbol(TEXT_UNIT[body])
        if self.eat("<"):
            name = self.match(_NAME) or self.fail("expected a resource name")
            test = None
            if self.eat(":"):
                test = self.match(_NAME) or self.fail("expected a test-state name")
            self.expect(">")
            if test is None:
                return ResourceSymbol("static" if name[0].islower() else "dynamic", name)
            return ResourceSymbol("dynamic", name, test)
        if self.eat("{"):
            name = self.match(_NAME) or self.fail("expected a resource name")
            self.expect(":")
            test = self.match(_NAME) or self.fail("expected a source-state name")
            self.expect("}")
            return ResourceSymbol("protected", name, test)
        self.fail("expected a resource symbol")

    def flag(self):
        if self.eat("!coh"):
            return "coherent"
        if self.eat("!inc"):
            return "incoherent"
        return None

    # expressions
    def term(self, sign, terms, o, inf, flags):
        if self.peek("o") and self.s[self.i + 1:self.i + 2] in ("[", "<", "{"):
            self.i += 1
            if sign < 0:
                self.fail("o-terms cannot be negated")
            o.append(self.symbol())
            return
        if self.peek("inf") and self.s[self.i + 3:self.i + 4] in ("[", "<", "{"):
            self.i += 3
            if sign < 0:
                self.fail("infinite terms cannot be negated")
            inf.append(self.symbol())
            return
        c = self.coef()
        if not self.at_symbol():
            self.fail("expected a resource symbol")
        sym = self.symbol()
        c = Coefficient(1) if c is None else c
        terms.append((sym, c if sign > 0 else -c))
        f = self.flag()
        if f:
            flags.append((sym, f))

    def expr(self):
        terms, o, inf, flags = [], [], [], []
        if self.peek("0"):
            nxt = self.s[self.i + 1:self.i + 2]
            if not (nxt.isdigit() or nxt in ("/", ".", "*", "(", "[", "<", "{", "H", "I")):
                self.i += 1
                return ResourceExpr(), []
        sign = -1 if self.eat("-") else 1
        self.term(sign, terms, o, inf, flags)
        while True:
            if self.eat("+"):
                self.term(1, terms, o, inf, flags)
            elif self.peek("-") and not self.peek("->"):
                self.i += 1
                self.term(-1, terms, o, inf, flags)
            else:
                break
        return ResourceExpr(terms, o, inf), flags

    def relation(self):
        for rel in (">=s", ">=", "="):
            if self.eat(rel):
                return rel
        self.fail("expected '>=', '>=s' or '='")

    def where(self):
        contexts, facts = [], []
        if not self.eat("where"):
            return IdentityBasis()
        while True:
            save = self.i
            tag = self.match(_TAG)
            if tag and self.eat("=pure("):
                pure = self._label_list(")|")
                given = frozenset()
                if self.eat("|"):
                    given = self._label_list(")")
                self.expect(")")
                contexts.append(StateContext(tag, pure, given))
            else:
                self.i = save
                c = self.csum()
                op = ">=" if self.eat(">=") else (">" if self.eat(">") else None)
                if op is None:
                    self.fail("expected '>' or '>=' in a declared fact")
                b = self.number()
                if b is None:
                    self.fail("expected a numeric bound")
                facts.append(Fact(c, op, b))
            if not self.eat(";"):
                break
        return IdentityBasis(tuple(contexts), tuple(facts))

    def _label_list(self, stops):
        j = self.i
        while j < len(self.s) and self.s[j] not in stops:
            j += 1
        body = self.s[self.i:j]
        self.i = j
        return frozenset().union(*(split_labels(p) for p in body.split(",") if p)) \
            if body else frozenset()


def parse_expr(text: str) -> ResourceExpr:
    p = _Parser(text)
    e, flags = p.expr()
    if flags:
        p.fail("decoupling flags are only allowed inside inequalities")
    if not p.done():
        p.fail("unexpected trailing text")
    return e


def parse_coefficient(text: str) -> Coefficient:
    p = _Parser(text)
    c = p.csum()
    if not p.done():
        p.fail("unexpected trailing text")
    return c


def parse_symbol(text: str) -> ResourceSymbol:
    p = _Parser(text)
    s = p.symbol()
    if not p.done():
        p.fail("unexpected trailing text")
    return s


@lru_cache(maxsize=4096)
def parse_ri(text: str) -> ResourceInequality:
    """Parse a resource inequality, e.g. ``<rho> + 1/2 I(A;E)@psi [q->q] >= ...``.

    Results are immutable, so repeated texts (proof replay, fuzzing) are
    served from a cache.
    """
    p = _Parser(text)
    lhs, lf = p.expr()
    rel = p.relation()
    rhs, rf = p.expr()
    basis = p.where()
    if not p.done():
        p.fail("unexpected trailing text")
    flags = [(("lhs", s), f) for s, f in lf] + [(("rhs", s), f) for s, f in rf]
    return ResourceInequality(lhs, rhs, rel, tuple(flags), basis)


def parse_fact(text: str) -> Fact:
    p = _Parser("0>=0where" + re.sub(r"\s+", "", text))
    p.expr(); p.relation(); p.expr()
    basis = p.where()
    if not p.done() or len(basis.facts) != 1:
        p.fail("expected a single fact")
    return basis.facts[0]


# -- printing ---------------------------------------------------------------

def _term_text(sym, c: Coefficient, first: bool, flag=None) -> str:
    neg = (c.is_rational and c.const < 0) or (
        not c.const and len(c.atoms) == 1 and c.atoms[0][1] < 0)
    mag = -c if neg else c
    body = f"{mag.as_prefix()}{sym}"
    if flag:
        body += FLAG_TEXT[flag]
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_expr(e: ResourceExpr, flags: dict | None = None) -> str:
    flags = flags or {}
    parts = []
    for s, c in e.terms:
        parts.append(_term_text(s, c, not parts, flags.get(s)))
    for s in sorted(e.inf_terms, key=lambda s: s.sort_key()):
        parts.append(("" if not parts else " + ") + f"inf{s}")
    for s in sorted(e.o_terms, key=lambda s: s.sort_key()):
        parts.append(("" if not parts else " + ") + f"o{s}")
    return "".join(parts) if parts else "0"


def format_ri(ri: ResourceInequality, with_where: bool = True) -> str:
    fl = ri.flag_map
    lhs = format_expr(ri.lhs, {s: f for (side, s), f in fl.items() if side == "lhs"})
    rhs = format_expr(ri.rhs, {s: f for (side, s), f in fl.items() if side == "rhs"})
    out = f"{lhs} {ri.relation} {rhs}"
    if with_where:
        items = [str(c) for c in ri.basis.contexts] + [
            f"{f.coef} {f.op} {fraction_str(f.bound)}" for f in ri.basis.facts]
        if items:
            out += " where " + "; ".join(items)
    return out
