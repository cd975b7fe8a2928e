"""Rewrite rules of the three-holed-torus twist presentation and a
replayable proof-script verifier.

The rule set:

* ``COMMUTE(x,y)``       -- twists about disjoint curves commute,
* ``BRAID(b,ai)``        -- b ai b = ai b ai for the once-intersecting pairs,
* ``STAR()``             -- c1 c2 c3 = (b a1 a2 a3)^3,
* ``CENTRAL(ci,g)``      -- boundary twists move past every twist generator,
* ``CONJ_REFLECT(g)``    -- r g^e r = sigma(g)^-e, the reflection conjugation,
* ``REVERSE_S(c)``       -- s c^e s^-1 = c^-e for the designated curve,
* ``COMMUTE_H(g)``       -- h moves past every twist generator,
* ``FREE_RED(x)``        -- delete or insert a cancelling pair.

Rules are bidirectional.  ``LR`` replaces the left side of the stored
equation by the right one at a position, ``RL`` the converse.  Where the
relation survives inverting every letter (BRAID, STAR), the rule also
matches the all-inverted pattern; mixed signs never match.  A proof script
is a start word, a step list and an end word; replaying the steps must
reproduce the end word letter for letter -- there is no implicit reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .words import (
    DEFAULT_ALPHABET,
    Alphabet,
    Letter,
    Word,
    letter,
    word,
)

#: The reflection's action on curves: fixes b, a1, c1 and swaps a2/a3, c2/c3.
SIGMA = {
    "b": "b",
    "a1": "a1",
    "a2": "a3",
    "a3": "a2",
    "c1": "c1",
    "c2": "c3",
    "c3": "c2",
}

_TORUS_GENS = ("b", "a1", "a2", "a3", "c1", "c2", "c3")
_BOUNDARY = ("c1", "c2", "c3")
_DISJOINT_PAIRS = {frozenset(p) for p in (("a1", "a2"), ("a1", "a3"), ("a2", "a3"))}
for _c in _BOUNDARY:
    for _g in _TORUS_GENS:
        if _g != _c:
            _DISJOINT_PAIRS.add(frozenset((_c, _g)))

_STAR_RHS = ("b", "a1", "a2", "a3") * 3


class Direction(Enum):
    LR = "LR"
    RL = "RL"

    def flipped(self) -> "Direction":
        return Direction.RL if self is Direction.LR else Direction.LR


class PatternMismatch(Exception):
    """A rule pattern failed to match the word at the step's position."""

    def __init__(self, position: int, expected: str, found: str):
        super().__init__(f"expected {expected} at position {position}, found {found}")
        self.position = position
        self.expected = expected
        self.found = found


class UnknownRule(KeyError):
    pass


# (pattern length, replacement length) per direction; used for position
# arithmetic when mirroring and for step sanity checks.
_SHAPES: dict[str, dict[Direction, tuple[int, int]]] = {
    "COMMUTE": {Direction.LR: (2, 2), Direction.RL: (2, 2)},
    "BRAID": {Direction.LR: (3, 3), Direction.RL: (3, 3)},
    "STAR": {Direction.LR: (3, 12), Direction.RL: (12, 3)},
    "CENTRAL": {Direction.LR: (2, 2), Direction.RL: (2, 2)},
    "CONJ_REFLECT": {Direction.LR: (3, 1), Direction.RL: (1, 3)},
    "REVERSE_S": {Direction.LR: (3, 1), Direction.RL: (1, 3)},
    "COMMUTE_H": {Direction.LR: (2, 2), Direction.RL: (2, 2)},
    "FREE_RED": {Direction.LR: (2, 0), Direction.RL: (0, 2)},
}


@dataclass(frozen=True)
class Rule:
    """One parametric rule instance, e.g. COMMUTE(a1,a2) or FREE_RED(a1^-1)."""

    family: str
    params: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.family not in _SHAPES:
            raise ValueError(f"unknown rule family {self.family!r}")
        _VALIDATORS[self.family](self.params)

    def render(self) -> str:
        return f"{self.family}({','.join(self.params)})"

    def pattern_len(self, direction: Direction) -> int:
        return _SHAPES[self.family][direction][0]

    def replacement_len(self, direction: Direction) -> int:
        return _SHAPES[self.family][direction][1]

    def match(self, letters: tuple[Letter, ...], pos: int, direction: Direction
              ) -> tuple[Letter, ...] | None:
        """Return the replacement letters if the pattern matches at pos."""
        n = self.pattern_len(direction)
        if pos < 0 or pos + n > len(letters):
            return None
        seg = letters[pos:pos + n]
        return _MATCHERS[self.family](self.params, seg, direction)


def _validate_commute(params: tuple[str, ...]) -> None:
    if len(params) != 2 or frozenset(params) not in _DISJOINT_PAIRS:
        raise ValueError(f"COMMUTE{params}: not a disjoint generator pair")


def _validate_braid(params: tuple[str, ...]) -> None:
    if len(params) != 2 or params[0] != "b" or params[1] not in ("a1", "a2", "a3"):
        raise ValueError(f"BRAID{params}: expected (b, ai)")


def _validate_star(params: tuple[str, ...]) -> None:
    if params:
        raise ValueError("STAR takes no parameters")


def _validate_central(params: tuple[str, ...]) -> None:
    if (len(params) != 2 or params[0] not in _BOUNDARY
            or params[1] not in _TORUS_GENS or params[0] == params[1]):
        raise ValueError(f"CENTRAL{params}: expected (ci, g) over the twist alphabet")


def _validate_conj_reflect(params: tuple[str, ...]) -> None:
    if len(params) != 1 or params[0] not in SIGMA:
        raise ValueError(f"CONJ_REFLECT{params}: expected one twist generator")


def _validate_reverse_s(params: tuple[str, ...]) -> None:
    if len(params) != 1:
        raise ValueError("REVERSE_S takes the designated curve name")


def _validate_commute_h(params: tuple[str, ...]) -> None:
    if len(params) != 1 or params[0] not in _TORUS_GENS:
        raise ValueError(f"COMMUTE_H{params}: expected one twist generator")


def _validate_free_red(params: tuple[str, ...]) -> None:
    if len(params) != 1:
        raise ValueError("FREE_RED takes one signed letter")
    letter(params[0])  # syntax check


_VALIDATORS = {
    "COMMUTE": _validate_commute,
    "BRAID": _validate_braid,
    "STAR": _validate_star,
    "CENTRAL": _validate_central,
    "CONJ_REFLECT": _validate_conj_reflect,
    "REVERSE_S": _validate_reverse_s,
    "COMMUTE_H": _validate_commute_h,
    "FREE_RED": _validate_free_red,
}


def _match_swap(first: str, second: str, seg: tuple[Letter, ...],
                direction: Direction) -> tuple[Letter, ...] | None:
    if direction is Direction.RL:
        first, second = second, first
    if seg[0].name == first and seg[1].name == second:
        return (seg[1], seg[0])
    return None


def _match_commute(params, seg, direction):
    return _match_swap(params[0], params[1], seg, direction)


def _match_central(params, seg, direction):
    return _match_swap(params[0], params[1], seg, direction)


def _match_commute_h(params, seg, direction):
    return _match_swap("h", params[0], seg, direction)


def _match_braid(params, seg, direction):
    b, ai = params
    outer, inner = (b, ai) if direction is Direction.LR else (ai, b)
    e = seg[0].sign
    if (seg[0].name, seg[1].name, seg[2].name) == (outer, inner, outer) \
            and seg[1].sign == e and seg[2].sign == e:
        return (Letter(inner, e), Letter(outer, e), Letter(inner, e))
    return None


def _match_star(params, seg, direction):
    if direction is Direction.LR:
        if seg == tuple(Letter(c, 1) for c in _BOUNDARY):
            return tuple(Letter(g, 1) for g in _STAR_RHS)
        if seg == tuple(Letter(c, -1) for c in reversed(_BOUNDARY)):
            return tuple(Letter(g, -1) for g in reversed(_STAR_RHS))
    else:
        if seg == tuple(Letter(g, 1) for g in _STAR_RHS):
            return tuple(Letter(c, 1) for c in _BOUNDARY)
        if seg == tuple(Letter(g, -1) for g in reversed(_STAR_RHS)):
            return tuple(Letter(c, -1) for c in reversed(_BOUNDARY))
    return None


def _match_conj_reflect(params, seg, direction):
    (g,) = params
    if direction is Direction.LR:
        if seg[0] == Letter("r", 1) and seg[2] == Letter("r", 1) and seg[1].name == g:
            return (Letter(SIGMA[g], -seg[1].sign),)
    else:
        if seg[0].name == SIGMA[g]:
            return (Letter("r", 1), Letter(g, -seg[0].sign), Letter("r", 1))
    return None


def _match_reverse_s(params, seg, direction):
    (c,) = params
    if direction is Direction.LR:
        if seg[0] == Letter("s", 1) and seg[2] == Letter("s", -1) and seg[1].name == c:
            return (Letter(c, -seg[1].sign),)
    else:
        if seg[0].name == c:
            return (Letter("s", 1), Letter(c, -seg[0].sign), Letter("s", -1))
    return None


def _match_free_red(params, seg, direction):
    lt = letter(params[0])
    pair = (Letter(lt.name, 1), Letter(lt.name, 1)) if lt.name == "r" \
        else (lt, lt.inverse())
    if direction is Direction.LR:
        return () if seg == pair else None
    return pair  # insertion matches the empty segment anywhere


_MATCHERS = {
    "COMMUTE": _match_commute,
    "BRAID": _match_braid,
    "STAR": _match_star,
    "CENTRAL": _match_central,
    "CONJ_REFLECT": _match_conj_reflect,
    "REVERSE_S": _match_reverse_s,
    "COMMUTE_H": _match_commute_h,
    "FREE_RED": _match_free_red,
}


@dataclass(frozen=True)
class ProofStep:
    rule: Rule
    direction: Direction
    position: int

    def render(self) -> str:
        return f"{self.rule.render()} {self.direction.value} @ {self.position}"

    def inverted(self) -> "ProofStep":
        """The step undoing this one at the same position."""
        return ProofStep(self.rule, self.direction.flipped(), self.position)


@dataclass(frozen=True)
class ProofScript:
    start: Word
    steps: tuple[ProofStep, ...]
    end: Word

    def inverted(self) -> "ProofScript":
        return ProofScript(self.end, tuple(s.inverted() for s in reversed(self.steps)), self.start)


def apply_rule(w: Word, step: ProofStep) -> Word:
    """Apply one step; raise :class:`PatternMismatch` if it does not fit."""
    repl = step.rule.match(w.letters, step.position, step.direction)
    if repl is None:
        n = step.rule.pattern_len(step.direction)
        found = " ".join(str(lt) for lt in w.letters[step.position:step.position + n])
        raise PatternMismatch(step.position, f"{step.rule.render()} {step.direction.value}",
                              found or "<out of range>")
    pos, n = step.position, step.rule.pattern_len(step.direction)
    return Word(w.letters[:pos] + repl + w.letters[pos + n:])


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failed_step: int | None  # 1-based, matching the script text labels
    message: str
    final: Word

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAIL at step {self.failed_step}"
        return f"{status}: {self.message}"


def verify_script(script: ProofScript) -> VerificationReport:
    """Replay every step from the start word; the result must equal the end
    word exactly.  Failure is a report state, never an exception."""
    current = script.start
    for i, step in enumerate(script.steps, start=1):
        try:
            current = apply_rule(current, step)
        except PatternMismatch as exc:
            return VerificationReport(False, i, str(exc), current)
    if current != script.end:
        return VerificationReport(
            False, len(script.steps) + 1,
            f"final word {current} does not equal declared end {script.end}", current)
    return VerificationReport(True, None, f"{len(script.steps)} steps replayed", current)


class Presentation:
    """An immutable rule table over an alphabet."""

    def __init__(self, name: str, alphabet: Alphabet, rules: Iterable[Rule]):
        self.name = name
        self.alphabet = alphabet
        self._rules: dict[tuple[str, tuple[str, ...]], Rule] = {}
        for rule in rules:
            self._rules[(rule.family, rule.params)] = rule

    def rule(self, family: str, params: tuple[str, ...] = ()) -> Rule:
        try:
            return self._rules[(family, tuple(params))]
        except KeyError:
            raise UnknownRule(f"{family}({','.join(params)}) is not in presentation "
                              f"{self.name!r}") from None

    def rules(self) -> tuple[Rule, ...]:
        return tuple(self._rules.values())


def _free_red_rules(names: Iterable[str], alphabet: Alphabet) -> list[Rule]:
    out = []
    for name in names:
        if alphabet.is_involution(name):
            out.append(Rule("FREE_RED", (name,)))
        else:
            out.append(Rule("FREE_RED", (name,)))
            out.append(Rule("FREE_RED", (f"{name}^-1",)))
    return out


@lru_cache(maxsize=None)
def torus_presentation(with_h: bool = False) -> Presentation:
    """The mapping-class-group rules of the three-holed torus, plus the
    reflection conjugation; optionally extended by the commuting
    complement homeomorphism h."""
    rules: list[Rule] = []
    for pair in sorted(_DISJOINT_PAIRS, key=sorted):
        rules.append(Rule("COMMUTE", tuple(sorted(pair))))
    for ai in ("a1", "a2", "a3"):
        rules.append(Rule("BRAID", ("b", ai)))
    rules.append(Rule("STAR"))
    for ci in _BOUNDARY:
        for g in _TORUS_GENS:
            if g != ci:
                rules.append(Rule("CENTRAL", (ci, g)))
    for g in _TORUS_GENS:
        rules.append(Rule("CONJ_REFLECT", (g,)))
    names = list(_TORUS_GENS) + ["r"]
    if with_h:
        for g in _TORUS_GENS:
            rules.append(Rule("COMMUTE_H", (g,)))
        names.append("h")
    rules.extend(_free_red_rules(names, DEFAULT_ALPHABET))
    name = "torus+h" if with_h else "torus"
    return Presentation(name, DEFAULT_ALPHABET, rules)


@lru_cache(maxsize=None)
def even_power_presentation() -> Presentation:
    """Rules for the even-power certificates: the designated curve c and
    its neighbourhood-reversing homeomorphism s."""
    rules = [Rule("REVERSE_S", ("c",))]
    rules.extend(_free_red_rules(["c", "s"], DEFAULT_ALPHABET))
    return Presentation("even-power", DEFAULT_ALPHABET, rules)


# --- script text format ----------------------------------------------------
#
#   # comment
#   start: <word>
#   step <k>: <RULE>(<params>) <LR|RL> @ <position>
#   end: <word>
#
# Step labels k count from 1 and must be consecutive.

_STEP_RE = re.compile(r"step (\d+): ([A-Z_]+)\(([^)]*)\) (LR|RL) @ (\d+)$")


class ScriptSyntaxError(ValueError):
    pass


def format_script(script: ProofScript) -> str:
    lines = [f"start: {script.start}"]
    for i, step in enumerate(script.steps, start=1):
        lines.append(f"step {i}: {step.render()}")
    lines.append(f"end: {script.end}")
    return "\n".join(lines) + "\n"


def parse_script(text: str, presentation: Presentation) -> ProofScript:
    start: Word | None = None
    end: Word | None = None
    steps: list[ProofStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            if start is not None:
                raise ScriptSyntaxError(f"line {lineno}: duplicate start line")
            start = word(line[len("start:"):].strip(), presentation.alphabet)
        elif line.startswith("end:"):
            if end is not None:
                raise ScriptSyntaxError(f"line {lineno}: duplicate end line")
            end = word(line[len("end:"):].strip(), presentation.alphabet)
        else:
            m = _STEP_RE.match(line)
            if not m:
                raise ScriptSyntaxError(f"line {lineno}: cannot parse {line!r}")
            k, family, params_text, direction, pos = m.groups()
            if int(k) != len(steps) + 1:
                raise ScriptSyntaxError(f"line {lineno}: step label {k}, expected {len(steps) + 1}")
            params = tuple(p.strip() for p in params_text.split(",")) if params_text.strip() else ()
            rule = presentation.rule(family, params)
            steps.append(ProofStep(rule, Direction(direction), int(pos)))
    if start is None or end is None:
        raise ScriptSyntaxError("script needs both a start and an end line")
    return ProofScript(start, tuple(steps), end)


# --- bounded bidirectional search -------------------------------------------


@dataclass(frozen=True)
class EqualityResult:
    status: str  # "equal" | "unknown"
    witness: ProofScript | None


def _neighbours(letters: tuple[Letter, ...], rules: tuple[Rule, ...]):
    """All single-step rewrites, in deterministic (rule id, position) order."""
    for rule in rules:
        for direction in (Direction.LR, Direction.RL):
            span = rule.pattern_len(direction)
            for pos in range(len(letters) - span + 1):
                repl = rule.match(letters, pos, direction)
                if repl is not None:
                    yield (letters[:pos] + repl + letters[pos + span:],
                           ProofStep(rule, direction, pos))


def equal_modulo_rules(u: Word, v: Word, budget: int,
                       presentation: Presentation | None = None,
                       slack: int = 8) -> EqualityResult:
    """Breadth-first bidirectional search for a rewrite path from u to v.

    Returns "equal" only with a replayable script as witness; "unknown"
    never asserts inequality.  ``budget`` caps the number of expanded
    words; words longer than max(|u|,|v|) + slack are pruned.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    pres = presentation if presentation is not None else torus_presentation(with_h=True)
    rules = tuple(sorted(pres.rules(), key=lambda r: r.render()))
    limit = max(len(u), len(v)) + slack

    # parents[side][word] = (previous word, step that produced this word)
    parents: list[dict[tuple[Letter, ...], tuple[tuple[Letter, ...], ProofStep] | None]]
    parents = [{u.letters: None}, {v.letters: None}]
    frontiers = [[u.letters], [v.letters]]
    expanded = 0
    meet: tuple[Letter, ...] | None = u.letters if u.letters in parents[1] else None

    while meet is None and expanded < budget and (frontiers[0] or frontiers[1]):
        side = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        next_frontier: list[tuple[Letter, ...]] = []
        for node in frontiers[side]:
            if meet is not None or expanded >= budget:
                break
            expanded += 1
            for child, step in _neighbours(node, rules):
                if len(child) > limit or child in parents[side]:
                    continue
                parents[side][child] = (node, step)
                next_frontier.append(child)
                if child in parents[1 - side]:
                    meet = child
                    break
        frontiers[side] = next_frontier

    if meet is None:
        return EqualityResult("unknown", None)

    forward: list[ProofStep] = []  # u ..> meet
    node = meet
    while parents[0][node] is not None:
        prev, step = parents[0][node]  # type: ignore[misc]
        forward.append(step)
        node = prev
    forward.reverse()
    backward: list[ProofStep] = []  # meet ..> v by inverting v-side steps
    node = meet
    while parents[1][node] is not None:
        prev, step = parents[1][node]  # type: ignore[misc]
        backward.append(step.inverted())
        node = prev
    script = ProofScript(u, tuple(forward + backward), v)
    report = verify_script(script)
    if not report.ok:  # pragma: no cover - internal consistency guard
        raise AssertionError(f"search produced a broken witness: {report}")
    return EqualityResult("equal", script)
