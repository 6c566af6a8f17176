"""Scripted derivations replayed by the checker.

Each function states its proof as an explicit sequence of rule
applications. Positivity of a rate that a step relies on (for instance
before derandomizing) is made explicit with an ``assume`` step, so the
hypothesis appears in the final ``where`` clause.
"""

from __future__ import annotations

from .proof import Proof, ProofBuilder

_PSI = "psi = pure(A,B,E)"


def ccc_identity() -> Proof:
    b = ProofBuilder("ccc-identity", "coherent communication identity from coherent TP and SD")
    csd = b.step("axiom", name="coherent-sd")
    c1 = b.step("cancellation", [csd], gamma="[qq]")
    side = b.step("axiom", name="cobit-ebit")
    c2 = b.step("o-removal", [c1, side], symbol="[qq]")
    ge = b.step("scaling", [c2], factor="1/2")
    ctp = b.step("axiom", name="coherent-tp")
    le = b.step("scaling", [ctp], factor="1/2")
    b.step("antisymmetry", [ge, le])
    return b.finish("[q->qq] = 1/2 [q->q] + 1/2 [qq]")


def _hashing2(b: ProofBuilder) -> str:
    tp = b.step("axiom", name="tp")
    tps = b.step("scaling", [tp], factor="1/2 I(A;E)@psi")
    rho = b.step("reflexivity", expr="<rho>")
    add = b.step("addition", [rho, tps])
    mom = b.step("axiom", name="mother")
    tr = b.step("transitivity", [add, mom])
    return b.step("cancellation", [tr], gamma="1/2 I(A;E)@psi [qq]")


def hashing2_from_mother() -> Proof:
    b = ProofBuilder("hashing2-from-mother", "mother followed by teleportation")
    _hashing2(b)
    return b.finish(f"<rho> + I(A;E)@psi [c->c] + o[qq] >= Icoh(A>B)@psi [qq] where {_PSI}")


def _ntp_tail(b: ProofBuilder, hashing: str) -> str:
    tp = b.step("axiom", name="tp")
    tpf = b.step("assume", [tp], facts=["Icoh(A>B)@psi >= 0"])
    tps = b.step("scaling", [tpf], factor="Icoh(A>B)@psi")
    refl = b.step("reflexivity", expr="2 Icoh(A>B)@psi [c->c]")
    add = b.step("addition", [hashing, refl])
    return b.step("transitivity", [add, tps])


def ntp2() -> Proof:
    b = ProofBuilder("ntp2", "noisy teleportation from the teleportation-derived hashing")
    _ntp_tail(b, _hashing2(b))
    return b.finish("<rho> + I(A;B)@psi [c->c] + o[qq] >= Icoh(A>B)@psi [q->q] "
                    f"where {_PSI}; Icoh(A>B)@psi >= 0")


def ntp_from_hashing() -> Proof:
    b = ProofBuilder("ntp-from-hashing", "hashing followed by teleportation")
    _ntp_tail(b, b.step("axiom", name="hashing"))
    return b.finish("<rho> + I(A;B)@psi [c->c] >= Icoh(A>B)@psi [q->q] "
                    f"where {_PSI}; Icoh(A>B)@psi >= 0")


def nsd_from_mother() -> Proof:
    b = ProofBuilder("nsd-from-mother", "mother combined with super-dense coding")
    mom = b.step("axiom", name="mother")
    refl = b.step("reflexivity", expr="1/2 I(A;B)@psi [q->q]")
    add = b.step("addition", [mom, refl])
    sd = b.step("axiom", name="sd")
    sds = b.step("scaling", [sd], factor="1/2 I(A;B)@psi")
    b.step("transitivity", [add, sds])
    return b.finish(f"<rho> + H(A)@psi [q->q] >= I(A;B)@psi [c->c] where {_PSI}")


def eac_from_father() -> Proof:
    b = ProofBuilder("eac-from-father", "father combined with super-dense coding")
    fa = b.step("axiom", name="father")
    refl = b.step("reflexivity", expr="1/2 I(R;B)@psi [qq]")
    add = b.step("addition", [fa, refl])
    sd = b.step("axiom", name="sd")
    sds = b.step("scaling", [sd], factor="1/2 I(R;B)@psi")
    b.step("transitivity", [add, sds])
    return b.finish("<N> + H(R)@psi [qq] >= I(R;B)@psi [c->c] where psi = pure(R,B,E)")


def lsd_from_father() -> Proof:
    b = ProofBuilder("lsd-from-father", "father with entanglement distribution and cancellation")
    fa = b.step("axiom", name="father")
    ed = b.step("axiom", name="ent-distribution")
    eds = b.step("scaling", [ed], factor="1/2 I(R;E)@psi")
    refl = b.step("reflexivity", expr="Icoh(R>B)@psi [q->q]")
    add = b.step("addition", [eds, refl])
    tr = b.step("transitivity", [fa, add])
    b.step("cancellation", [tr], gamma="1/2 I(R;E)@psi [qq]")
    return b.finish("<N> + o[qq] >= Icoh(R>B)@psi [q->q] where psi = pure(R,B,E)")


def crd_from_cqsw() -> Proof:
    b = ProofBuilder("crd-from-cqsw",
                     "common randomness distillation from compression with side information")
    cq = b.step("axiom", name="cqsw-copy")
    plain = b.step("proper-improper", [cq], item=1)
    red = b.step("relativize", item=5, **{"from": "{CqAB:rhoxs}", "to": "{Deltabar:rhoxs}"})
    prep = b.step("relativize", item=2, resource="{Deltabar:rhoxs}", output="<rhoxx>")
    conc = b.step("axiom", name="cr-concentration", labels={"X_B": "X_A"}, tags={"cr": "cq"})
    t1 = b.step("transitivity", [plain, red])
    t2 = b.step("transitivity", [t1, prep])
    t3 = b.step("transitivity", [t2, conc])
    b.step("source-fake", [t3], protected="{CqA:rhoxs}", static="<rhoxb>")
    return b.finish("<rhoxb> + H(X_A|B)@cq [c->c] >= H(X_A)@cq [cc]")


def cqrsp() -> Proof:
    b = ProofBuilder("cqrsp", "quantum compression with classical side information")
    crst = b.step("axiom", name="crst-feedback", tags={"crst": "cqr"})
    comp = b.step("relativize", item=3, first="{CqSrc:rhoxs}", second="<NbarFb:rhox>",
                  composite="{CqNfbA:rhoxs}")
    src = b.step("reflexivity", expr="{CqSrc:rhoxs}")
    a1 = b.step("addition", [src, crst])
    t1 = b.step("transitivity", [a1, comp])
    sch = b.step("axiom", name="schumacher", tags={"src": "sy"})
    avg = b.step("convex-split", [sch], given="Y_B", from_tag="sy", to_tag="cqr",
                 symbols={"<Id:rho>": "<IdY:sigmay>"})
    redir = b.step("axiom", name="source-redirection")
    keep = b.step("reflexivity", expr="{CqNfbA:rhoxs}")
    a2 = b.step("addition", [avg, keep])
    t2 = b.step("transitivity", [a2, redir])
    qq = b.step("reflexivity", expr="H(B|Y_B)@cqr [q->q]")
    a3 = b.step("addition", [t1, qq])
    t3 = b.step("transitivity", [a3, t2])
    red = b.step("relativize", item=5, **{"from": "{CqNfbB:rhoxs}", "to": "{IdSB:rhoxs}"})
    t4 = b.step("transitivity", [t3, red])
    pos = b.step("assume", [t4], facts=["I(X_A;Y_B)@cqr > 0"])
    cr = b.step("axiom", name="cbit-rbit")
    der = b.step("derandomize", [pos, cr], pure=["{IdSB:rhoxs}"])
    src2 = b.step("proper-improper", [der], item=2, static="<cqsrc>")
    prep = b.step("relativize", item=2, resource="{CqSrc:rhoxs}", output="<cqsrc>")
    b.step("o-removal", [src2, prep], symbol="<cqsrc>")
    return b.finish("{CqSrc:rhoxs} + H(B|Y_B)@cqr [q->q] + I(X_A;Y_B)@cqr [c->c] "
                    ">=s {IdSB:rhoxs} where I(X_A;Y_B)@cqr > 0")


_SIG = "sig = pure(A',B,E,E'|X_B)"


def _grandmother(b: ProofBuilder) -> str:
    ict = b.step("axiom", name="ict2", labels={"R": "BE"}, tags={"ict": "sig"})
    rho = b.step("reflexivity", expr="<rho>")
    a1 = b.step("addition", [rho, ict])
    inst = b.step("relativize", item=4, state="<rho>", channel="<Tfb:rhoa>", output="<sigma>")
    t1 = b.step("transitivity", [a1, inst])
    mom = b.step("axiom", name="mother", labels={"A": "A'", "E": "EE'"}, tags={"psi": "sx"},
                 symbols={"<rho>": "<rhox>"})
    avg = b.step("convex-split", [mom], given="X_B", from_tag="sx", to_tag="sig",
                 symbols={"<rhox>": "<sigma>"})
    q = b.step("reflexivity", expr="1/2 I(A';EE'|X_B)@sig [q->q]")
    a2 = b.step("addition", [t1, q])
    t2 = b.step("transitivity", [a2, avg])
    pos = b.step("assume", [t2], facts=["I(X_B;BE)@sig > 0"])
    cr = b.step("axiom", name="cbit-rbit")
    return b.step("derandomize", [pos, cr])


def grandmother() -> Proof:
    b = ProofBuilder("grandmother",
                     "instrument compression, averaged mother and derandomization")
    _grandmother(b)
    return b.finish("<rho> + 1/2 I(A';EE'|X_B)@sig [q->q] + I(X_B;BE)@sig [c->c] "
                    f">= 1/2 I(A';B|X_B)@sig [qq] where {_SIG}; I(X_B;BE)@sig > 0")


def _dct_head(b: ProofBuilder) -> str:
    g = _grandmother(b)
    tp = b.step("axiom", name="tp")
    tps = b.step("scaling", [tp], factor="1/2 I(A';EE'|X_B)@sig")
    keep = b.step("reflexivity", expr="<rho> + I(X_B;BE)@sig [c->c]")
    a = b.step("addition", [tps, keep])
    t = b.step("transitivity", [a, g])
    return b.step("cancellation", [t], gamma="1/2 I(A';EE'|X_B)@sig [qq]")


def _hashing_side(b: ProofBuilder) -> str:
    h = b.step("axiom", name="hashing")
    return b.step("assume", [h], facts=["Icoh(A>B)@psi > 0"])


def dct_ed() -> Proof:
    b = ProofBuilder("dct-ed", "entanglement distillation by direct coding")
    head = _dct_head(b)
    b.step("o-removal", [head, _hashing_side(b)], symbol="[qq]")
    return b.finish("<rho> + (I(A';EE'|X_B)@sig + I(X_B;BE)@sig) [c->c] "
                    f">= Icoh(A'>BX_B)@sig [qq] where {_PSI}; {_SIG}; "
                    "I(X_B;BE)@sig > 0; Icoh(A>B)@psi > 0")


def dct_ntp() -> Proof:
    b = ProofBuilder("dct-ntp", "noisy teleportation by direct coding")
    head = _dct_head(b)
    tp = b.step("axiom", name="tp")
    tpf = b.step("assume", [tp], facts=["Icoh(A'>BX_B)@sig >= 0"])
    tps = b.step("scaling", [tpf], factor="Icoh(A'>BX_B)@sig")
    keep = b.step("reflexivity", expr="2 Icoh(A'>BX_B)@sig [c->c]")
    a = b.step("addition", [head, keep])
    t = b.step("transitivity", [a, tps])
    b.step("o-removal", [t, _hashing_side(b)], symbol="[qq]")
    return b.finish("<rho> + (I(A';B|X_B)@sig + I(X_B;BE)@sig) [c->c] "
                    f">= Icoh(A'>BX_B)@sig [q->q] where {_PSI}; {_SIG}; "
                    "I(X_B;BE)@sig > 0; Icoh(A'>BX_B)@sig >= 0; Icoh(A>B)@psi > 0")


def mother_from_hashing_rule_i() -> Proof:
    b = ProofBuilder("mother-from-hashing-ruleI", "Rule I applied to the hashing inequality")
    h = b.step("axiom", name="hashing")
    t = b.step("absolutize", [h], unit="cbit", to="tau", side="lhs")
    b.step("rule-I", [t])
    return b.finish(f"<rho> + 1/2 I(A;E)@psi [q->q] >= 1/2 I(A;B)@psi [qq] where {_PSI}")


def father_from_eac_rule_o() -> Proof:
    b = ProofBuilder("father-from-eac-ruleO", "Rule O applied to entanglement-assisted coding")
    e = b.step("axiom", name="eac")
    o = b.step("rule-O", [e])
    b.step("cancellation", [o], gamma="1/2 I(R;B)@psi [qq]")
    return b.finish("<N:rhoa> + 1/2 I(R;E)@psi [qq] >= 1/2 I(R;B)@psi [q->q] "
                    "where psi = pure(R,B,E)")


def mother_from_nsd_rule_o() -> Proof:
    b = ProofBuilder("mother-from-nsd-ruleO", "Rule O applied to noisy super-dense coding")
    n = b.step("axiom", name="nsd")
    o = b.step("rule-O", [n])
    b.step("cancellation", [o], gamma="1/2 I(A;B)@psi [q->q]")
    return b.finish(f"<rho> + 1/2 I(A;E)@psi [q->q] >= 1/2 I(A;B)@psi [qq] where {_PSI}")


def absolutize_qubit() -> Proof:
    b = ProofBuilder("absolutize-qubit", "a qubit channel on maximally mixed inputs yields a qubit channel")
    tw = b.step("axiom", name="twirl-qubit")
    c = b.step("cancellation", [tw], gamma="2 [cc]")
    side = b.step("axiom", name="qubit-tau-rbit")
    b.step("o-removal", [c, side], symbol="[cc]")
    return b.finish("[q->q:tau] >= [q->q]")


_ALL = [ccc_identity, hashing2_from_mother, ntp2, nsd_from_mother, eac_from_father,
        lsd_from_father, ntp_from_hashing, crd_from_cqsw, cqrsp, grandmother,
        mother_from_hashing_rule_i, father_from_eac_rule_o, mother_from_nsd_rule_o,
        dct_ntp, dct_ed, absolutize_qubit]


def builtin_derivations() -> dict[str, Proof]:
    out = {}
    for f in _ALL:
        p = f()
        out[p.name] = p
    return out


def builtin(name: str) -> Proof:
    for f in _ALL:
        p = f()
        if p.name == name:
            return p
    raise KeyError(f"unknown builtin derivation {name!r}")
