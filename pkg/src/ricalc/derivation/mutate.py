"""Single-token mutations of proofs, used to test checker soundness."""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .proof import Proof, check_proof_json
from .rules import RULES

_NUM = re.compile(r"(?<![A-Za-z_'])\d+(?:/\d+)?")
_CLASSICAL = re.compile(r"\[(?:c->c(?::tau)?|cc)\](?:!coh|!inc)?")
_RULE_NAMES = sorted(RULES)


def _strings(d: dict):
    """Yield (setter, text) for every mutable string in a proof dict."""
    yield (lambda v: d.__setitem__("target", v)), d["target"]
    for st in d["steps"]:
        yield (lambda v, st=st: st.__setitem__("conclusion", v)), st["conclusion"]
        yield from _inst_strings(st["instantiation"])


def _inst_strings(obj):
    items = obj.items() if isinstance(obj, dict) else enumerate(obj)
    for k, v in items:
        if isinstance(v, str):
            yield (lambda new, o=obj, k=k: o.__setitem__(k, new)), v
        elif isinstance(v, (dict, list)):
            yield from _inst_strings(v)


def _other_number(tok: str, rng) -> str:
    q = Fraction(tok)
    while True:
        cand = Fraction(int(rng.integers(0, 7)), int(rng.integers(1, 5)))
        if cand != q:
            return str(cand.numerator) if cand.denominator == 1 else str(cand)


def _mutate_text(text: str, kind: str, rng):
    if kind == "coefficient":
        ms = list(_NUM.finditer(text))
        if not ms:
            return None
        m = ms[int(rng.integers(len(ms)))]
        return text[:m.start()] + _other_number(m.group(), rng) + text[m.end():]
    ms = list(_CLASSICAL.finditer(text))
    if not ms:
        return None
    m = ms[int(rng.integers(len(ms)))]
    tok = m.group()
    base = tok.split("!")[0]
    current = tok[len(base):]
    choices = [f for f in ("", "!coh", "!inc") if f != current]
    return text[:m.start()] + base + choices[int(rng.integers(len(choices)))] + text[m.end():]


def mutate(proof: Proof | dict, rng) -> tuple[str, str]:
    """Return (description, mutated proof JSON) for one random token change."""
    base = proof.to_dict() if isinstance(proof, Proof) else proof
    for _ in range(1000):
        d = json.loads(json.dumps(base))
        kind = ("coefficient", "rule", "flag")[int(rng.integers(3))]
        if kind == "rule":
            st = d["steps"][int(rng.integers(len(d["steps"])))]
            new = [r for r in _RULE_NAMES if r != st["rule"]]
            old, st["rule"] = st["rule"], new[int(rng.integers(len(new)))]
            return f"rule {old} -> {st['rule']} at {st['id']}", json.dumps(d)
        sites = list(_strings(d))
        setter, text = sites[int(rng.integers(len(sites)))]
        out = _mutate_text(text, kind, rng)
        if out is None or out == text:
            continue
        setter(out)
        return f"{kind}: {text!r} -> {out!r}", json.dumps(d)
    raise RuntimeError("no mutable token found")


def fuzz(proofs, n: int = 500, seed: int = 0):
    """Apply ``n`` single mutations across ``proofs``; return the survivors."""
    rng = np.random.default_rng(seed)
    proofs = list(proofs)
    dicts = [p.to_dict() for p in proofs]
    survivors = []
    for i in range(n):
        p = proofs[i % len(proofs)]
        desc, text = mutate(dicts[i % len(proofs)], rng)
        if check_proof_json(text).ok:
            survivors.append((p.name, desc))
    return survivors
