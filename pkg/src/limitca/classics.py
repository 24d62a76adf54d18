"""Small reference automata with fully understood long-run behaviour.

Three families: the binary minimum rule, a three-state particle rule whose
left and right movers annihilate on contact, and single-state constant
rules.  For the first two we also expose the word families that eventually
disappear from every sufficiently old configuration, together with a brute
force image check.
"""
from __future__ import annotations

from .engine import Alphabet, LocalRule, enumerate_images


def min_rule() -> LocalRule:
    """Radius-1 binary rule taking the minimum of the neighborhood."""
    alpha = Alphabet(["0", "1"])
    return LocalRule(alpha, 1, lambda w: min(w), name="min")


def _gliders_fn(w):
    x, y, z = w
    from_left = x == ">" and y != "<"
    from_right = z == "<" and y != ">"
    if from_left and from_right:
        return "0"
    if from_left:
        return ">"
    if from_right:
        return "<"
    return "0"


def gliders_rule() -> LocalRule:
    """Speed-1 particles over a quiescent background.

    A '>' moves right, a '<' moves left; when two opposite movers cross or
    land on the same cell they both disappear.
    """
    alpha = Alphabet(["0", "<", ">"])
    return LocalRule(alpha, 1, _gliders_fn, name="gliders")


def uniform_rule(state: str = "q") -> LocalRule:
    """Constant rule on a single-state alphabet."""
    alpha = Alphabet([state])
    return LocalRule(alpha, 1, lambda w: state, name=f"uniform:{state}")


def min_limit_forbidden(k_max: int) -> set:
    """Words 1 0^k 1 for 1 <= k <= k_max.

    These are exactly the patterns that a deep enough min image can no
    longer contain, while still occurring in shallow images.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    return {"1" + "0" * k + "1" for k in range(1, k_max + 1)}


def gliders_limit_forbidden(k_max: int) -> set:
    """Words < 0^k > for 0 <= k <= k_max (converging pairs)."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    return {"<" + "0" * k + ">" for k in range(k_max + 1)}


def word_absent_from_images(rule: LocalRule, word: str, depth: int) -> bool:
    """Brute-force check that `word` occurs in no depth-step image word."""
    target = tuple(word)
    return target not in enumerate_images(rule, len(target), depth=depth)
