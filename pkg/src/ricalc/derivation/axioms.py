"""Database of axioms: coding theorems and unit-protocol inequalities.

Each entry is stored in the text grammar so that the database doubles as a
round-trip test of the parser. Symbols follow one convention throughout:
lowercase ``<rho>`` names a static (state) resource, ``<N>``/``<N:omega>`` a
dynamic (channel) resource, ``{N:rho}`` a source-protected resource.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.expr import ResourceInequality
from ..algebra.grammar import parse_ri


@dataclass(frozen=True)
class Axiom:
    name: str
    ri: ResourceInequality
    side_conditions: tuple = ()
    source: str = ""
    text: str = ""


_PURE_ABE = "psi = pure(A,B,E)"
_PURE_RBE = "psi = pure(R,B,E)"

_TABLE = [
    # --- source coding -------------------------------------------------
    ("schumacher", "H(B)@src [q->q] >= <Id:rho>",
     ("holds iff the qubit rate is at least H(B); stated at the threshold",),
     "Schumacher quantum data compression"),
    ("schumacher-source", "H(B)@src [q->q] + {IdSA:rho} >=s {IdSB:rho}",
     ("source form of quantum compression",), "Schumacher quantum data compression"),
    ("ent-concentration", "<phi> >= H(B)@phi [qq] where phi = pure(A,B)",
     (), "entanglement concentration"),
    ("ent-dilution", "H(B)@phi [qq] + o[c->c] >= <phi> where phi = pure(A,B)",
     ("sublinear classical communication is necessary",), "entanglement dilution"),
    ("shannon", "H(X_B)@src [c->c] >= <Idbar:rhox>",
     ("holds iff the bit rate is at least H(X)",), "Shannon classical compression"),
    ("shannon-source", "H(X_B)@src [c->c] + {IdbarSA:rhox} >=s {IdbarSB:rhox}",
     (), "Shannon classical compression"),
    ("cr-concentration", "<rhoxx> >= H(X_B)@cr [cc]",
     (), "common randomness concentration"),
    ("cr-dilution", "H(X_B)@cr [cc] >= <rhoxx>",
     (), "common randomness dilution"),
    ("crst", "I(X_A;Y_B)@crst [c->c] + H(X_A|Y_B)@crst [cc] >= <Nbar:rhox>",
     (), "classical reverse Shannon theorem"),
    ("crst-feedback", "I(X_A;Y_B)@crst [c->c] + H(X_A|Y_B)@crst [cc] >= <NbarFb:rhox>",
     ("Alice also receives a copy of the channel output",),
     "classical reverse Shannon theorem with feedback"),
    ("crst-tradeoff", "I(W;X_A)@wyn [c->c] + I(W;Y_B|X_A)@wyn [cc] >= <Nbar:rhox>",
     ("W is any variable with X_A - W - Y_B a Markov chain",),
     "classical reverse Shannon trade-off between cbits and rbits"),
    ("cqsw", "H(X_B|B)@cq [c->c] + {CqA:rhoxs} >=s {CqB:rhoxs}",
     (), "classical compression with quantum side information"),
    ("cqsw-copy", "H(X_A|B)@cq [c->c] + {CqA:rhoxs} >=s {CqAB:rhoxs}",
     ("Alice keeps a copy of the compressed variable at no extra cost",),
     "classical compression with quantum side information"),
    ("ict", "I(R;X_B)@ict [c->c] + H(X_B|R)@ict [cc] >= <T:rhoa>",
     (), "instrument compression"),
    ("ict2", "I(R;X_B)@ict [c->c] + H(X_B|R)@ict [cc] >= <Tfb:rhoa>",
     ("Alice also keeps the instrument outcome",), "instrument compression with feedback"),
    ("cqrsp", "{CqSrc:rhoxs} + H(B|Y_B)@cqr [q->q] + I(X_A;Y_B)@cqr [c->c] >=s {IdSB:rhoxs}",
     (), "quantum compression with classical side information"),
    ("crd", "<rhoxb> + H(X_A|B)@cq [c->c] >= H(X_A)@cq [cc]",
     (), "common randomness distillation"),
    # --- unit protocols --------------------------------------------------
    ("tp", "2[c->c] + [qq] >= [q->q]", (), "teleportation"),
    ("sd", "[q->q] + [qq] >= 2[c->c]", (), "super-dense coding"),
    ("ent-distribution", "[q->q] >= [qq]", (), "entanglement distribution"),
    ("coherent-tp", "[q->q] + [qq] >= 2[q->qq]", (), "coherent teleportation"),
    ("coherent-sd", "2[q->qq] + [qq] >= [q->q] + 2[qq]", (), "coherent super-dense coding"),
    ("ccc", "2[q->qq] = [q->q] + [qq]", (), "coherent communication identity"),
    ("qubit-cbit", "[q->q] >= [c->c]", (), "a qubit channel sends a classical bit"),
    ("cobit-ebit", "[q->qq] >= [qq]", (), "a cobit creates an ebit"),
    ("cobit-cbit", "[q->qq] >= [c->c]", (), "a cobit sends a classical bit"),
    ("cbit-rbit", "[c->c] >= [cc]", (), "sending a random bit creates common randomness"),
    ("ebit-rbit", "[qq] >= [cc]", (), "measuring an ebit creates common randomness"),
    ("twirl-qubit", "[q->q:tau] + 2[cc] >= [q->q] + 2[cc]",
     ("shared randomness selects a Weyl twirl and is returned uncorrelated",),
     "twirling a maximally mixed qubit channel"),
    ("qubit-tau-rbit", "[q->q:tau] >= [cc]", (), "sending half of a random pair"),
    ("source-redirection", "<IdY:sigmay> + {CqNfbA:rhoxs} >= {CqNfbB:rhoxs}",
     ("represented symbolically; not simulated",), "redirecting a source to Bob"),
    # --- channel coding ------------------------------------------------
    ("hsw", "<N:rhoa> >= I(X_A;B)@hsw [c->c]", (),
     "classical capacity of a quantum channel"),
    ("shannon-channel", "<Nbar> >= I(X_A;Y_B)@shc [c->c]", (), "Shannon channel coding"),
    ("eac", f"<N:rhoa> + H(R)@psi [qq] >= I(R;B)@psi [c->c]!coh where {_PURE_RBE}",
     ("cbit output coherently decoupled",), "entanglement-assisted classical capacity"),
    ("lsd", f"<N> >= Icoh(R>B)@psi [q->q] where {_PURE_RBE}", (), "quantum capacity"),
    # --- noisy entanglement --------------------------------------------
    ("nsd", f"<rho> + H(A)@psi [q->q] >= I(A;B)@psi [c->c]!coh where {_PURE_ABE}",
     ("cbit output coherently decoupled",), "noisy super-dense coding"),
    ("hashing", f"<rho> + I(A;E)@psi [c->c]!coh >= Icoh(A>B)@psi [qq] where {_PURE_ABE}",
     ("cbit input coherently decoupled and uniformly random",), "hashing inequality"),
    ("merging", "{U:rhos} + I(A;E)@psi [c->c] + H(A|B)@psi [qq] >=s {IdSB:rhos} "
                f"where {_PURE_ABE}",
     ("two-sided source form only",), "state merging"),
    ("ntp", f"<rho> + I(A;B)@psi [c->c] >= Icoh(A>B)@psi [q->q] where {_PURE_ABE}",
     (), "noisy teleportation"),
    ("mother", f"<rho> + 1/2 I(A;E)@psi [q->q] >= 1/2 I(A;B)@psi [qq] where {_PURE_ABE}",
     (), "mother inequality"),
    ("father", f"<N> + 1/2 I(R;E)@psi [qq] >= 1/2 I(R;B)@psi [q->q] where {_PURE_RBE}",
     (), "father inequality"),
]


def _build():
    out = {}
    for name, text, side, source in _TABLE:
        out[name] = Axiom(name, parse_ri(text), tuple(side), source, text)
    return out


_DB = _build()


def axiom_db() -> list[Axiom]:
    return list(_DB.values())


def lookup(name: str) -> Axiom:
    try:
        return _DB[name]
    except KeyError:
        raise KeyError(f"unknown axiom {name!r}") from None
