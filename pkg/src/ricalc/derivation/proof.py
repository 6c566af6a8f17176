"""Proof objects, the step-by-step checker and the JSON proof format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..algebra.expr import ResourceInequality, ri_equal
from ..algebra.grammar import format_ri, parse_ri
from ..errors import RICalcError, SchemaMismatch
from .rules import apply_rule


@dataclass(frozen=True)
class DerivationStep:
    id: str
    rule: str
    premises: tuple
    instantiation: dict
    conclusion: ResourceInequality

    def to_dict(self) -> dict:
        return {"id": self.id, "rule": self.rule, "premises": list(self.premises),
                "instantiation": self.instantiation, "conclusion": format_ri(self.conclusion)}


@dataclass(frozen=True)
class Proof:
    name: str
    steps: tuple
    target: ResourceInequality
    description: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "target": format_ri(self.target),
             "steps": [s.to_dict() for s in self.steps]}
        if self.description:
            d["description"] = self.description
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def cited_axioms(self) -> list[str]:
        return [s.instantiation.get("name") for s in self.steps if s.rule == "axiom"]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    step_index: int | None = None
    step_id: str | None = None
    rule: str | None = None
    reason: str = ""
    recomputed: dict = field(default_factory=dict, compare=False, repr=False)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = f"step {self.step_index} ({self.step_id}, {self.rule})" \
            if self.step_index is not None else "proof"
        return f"FAILED at {where}: {self.reason}"


def proof_from_dict(d: dict) -> Proof:
    if not isinstance(d, dict) or "steps" not in d or "target" not in d:
        raise SchemaMismatch("a proof needs 'target' and 'steps'")
    steps = []
    for i, s in enumerate(d["steps"]):
        steps.append(DerivationStep(str(s.get("id", i)), s["rule"], tuple(s.get("premises", [])),
                                    dict(s.get("instantiation", {})), parse_ri(s["conclusion"])))
    return Proof(d.get("name", ""), tuple(steps), parse_ri(d["target"]), d.get("description", ""))


def proof_from_json(text: str) -> Proof:
    return proof_from_dict(json.loads(text))


def check_proof(proof: Proof) -> CheckResult:
    """Recompute every step from its premises; never trust recorded conclusions.

    Premises must name earlier steps, so the step order is a topological
    order and the DAG is acyclic by construction.
    """
    done: dict = {}
    for i, st in enumerate(proof.steps):
        def fail(reason):
            return CheckResult(False, i, st.id, st.rule, reason, done)
        if st.id in done:
            return fail(f"duplicate step id {st.id!r}")
        missing = [p for p in st.premises if p not in done]
        if missing:
            return fail(f"premise(s) {missing} do not name earlier steps")
        try:
            got = apply_rule(st.rule, [done[p] for p in st.premises], st.instantiation)
        except RICalcError as e:
            return fail(f"{type(e).__name__}: {e}")
        except (KeyError, TypeError, ValueError) as e:
            return fail(f"malformed instantiation: {e}")
        if not ri_equal(st.conclusion, got):
            return fail(f"recorded conclusion differs from recomputed one\n"
                        f"  recorded:   {format_ri(st.conclusion)}\n"
                        f"  recomputed: {format_ri(got)}")
        done[st.id] = got
    if not proof.steps:
        return CheckResult(False, None, None, None, "empty proof")
    last = done[proof.steps[-1].id]
    if not ri_equal(proof.target, last):
        return CheckResult(False, len(proof.steps) - 1, proof.steps[-1].id, proof.steps[-1].rule,
                           f"final conclusion does not match the target\n"
                           f"  target: {format_ri(proof.target)}\n"
                           f"  final:  {format_ri(last)}", done)
    return CheckResult(True, recomputed=done)


def check_proof_json(text: str) -> CheckResult:
    """Parse and check; malformed input is reported as a failure."""
    try:
        proof = proof_from_json(text)
    except (RICalcError, KeyError, TypeError, ValueError) as e:
        return CheckResult(False, None, None, None, f"unreadable proof: {type(e).__name__}: {e}")
    return check_proof(proof)


class ProofBuilder:
    """Script helper: each call applies a rule and records its conclusion."""

    def __init__(self, name: str, description: str = ""):
        self.name = name
        self.description = description
        self.steps: list[DerivationStep] = []
        self._concl: dict = {}

    def step(self, rule: str, premises=(), sid: str | None = None, **inst) -> str:
        sid = sid or f"s{len(self.steps) + 1}"
        concl = apply_rule(rule, [self._concl[p] for p in premises], inst)
        self.steps.append(DerivationStep(sid, rule, tuple(premises), inst, concl))
        self._concl[sid] = concl
        return sid

    def conclusion(self, sid: str) -> ResourceInequality:
        return self._concl[sid]

    def finish(self, target: str | ResourceInequality) -> Proof:
        t = parse_ri(target) if isinstance(target, str) else target
        return Proof(self.name, tuple(self.steps), t, self.description)


def format_proof_tree(proof: Proof) -> str:
    """Indented tree rooted at the final step; shared subproofs are shown once.

    Each line reads ``id [rule args] conclusion``; a step already printed
    elsewhere in the tree appears as ``id (see above)``.
    """
    by_id = {s.id: s for s in proof.steps}
    lines = [f"{proof.name}: {format_ri(proof.target)}"]
    shown: set = set()

    def label(st: DerivationStep) -> str:
        args = ", ".join(f"{k}={v}" for k, v in sorted(st.instantiation.items()))
        return f"{st.rule} {args}".strip()

    def walk(sid: str, depth: int):
        pad = "  " * depth
        if sid in shown:
            lines.append(f"{pad}{sid} (see above)")
            return
        shown.add(sid)
        st = by_id[sid]
        lines.append(f"{pad}{sid} [{label(st)}] {format_ri(st.conclusion)}")
        for p in st.premises:
            walk(p, depth + 1)

    if proof.steps:
        walk(proof.steps[-1].id, 1)
    return "\n".join(lines)
