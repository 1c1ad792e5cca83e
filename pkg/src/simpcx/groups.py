"""Group specifications and the text grammar shared by the CLI and the construction registry.

Grammar::

    trivial | free:n | cyclic:m | finite_abelian:n1,n2,...
    abelian:r | abelian:r:(n1,n2,...) | surface:l | freeprod:(spec, spec, ...)
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import UnsupportedSpec


@dataclass(frozen=True)
class GroupSpec:
    variant: str
    rank: int = 0
    chain: tuple[int, ...] = ()
    genus: int = 0
    parts: tuple["GroupSpec", ...] = ()

    def __post_init__(self):
        v = self.variant
        if v not in VARIANTS:
            raise UnsupportedSpec(f"unknown group variant {v!r}")
        if self.rank < 0:
            raise UnsupportedSpec("rank must be >= 0")
        for a, b in zip(self.chain, self.chain[1:]):
            if b % a:
                raise UnsupportedSpec(f"chain {list(self.chain)} is not a divisibility chain")
        if any(n < 2 for n in self.chain):
            raise UnsupportedSpec("invariant factors must be >= 2")
        if v == "cyclic" and len(self.chain) != 1:
            raise UnsupportedSpec("cyclic needs exactly one order m >= 2")
        if v == "finite_abelian" and not self.chain:
            raise UnsupportedSpec("finite_abelian needs a nonempty chain")
        if v == "surface_orientable" and self.genus < 1:
            raise UnsupportedSpec("genus must be >= 1")
        if v == "free_product" and not self.parts:
            raise UnsupportedSpec("free_product needs at least one factor")

    # constructors
    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def free(cls, n: int):
        return cls("free", rank=n)

    @classmethod
    def cyclic(cls, m: int):
        return cls("cyclic", chain=(m,))

    @classmethod
    def finite_abelian(cls, chain):
        return cls("finite_abelian", chain=tuple(chain))

    @classmethod
    def fg_abelian(cls, rank: int, chain=()):
        return cls("fg_abelian", rank=rank, chain=tuple(chain))

    @classmethod
    def surface(cls, genus: int):
        return cls("surface_orientable", genus=genus)

    @classmethod
    def free_product(cls, parts):
        return cls("free_product", parts=tuple(parts))

    # derived data
    @property
    def abelian_rank(self) -> int:
        """Rank of the free part of the abelianization."""
        if self.variant in ("free", "fg_abelian"):
            return self.rank
        if self.variant == "surface_orientable":
            return 2 * self.genus
        if self.variant == "free_product":
            return sum(p.abelian_rank for p in self.parts)
        return 0

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors of the torsion of the abelianization."""
        if self.variant == "free_product":
            return normalize_chain([n for p in self.parts for n in p.torsion])
        return self.chain

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def is_free(self) -> bool:
        if self.variant in ("trivial", "free"):
            return True
        if self.variant == "fg_abelian":
            return not self.chain and self.rank <= 1
        if self.variant == "free_product":
            return all(p.is_free for p in self.parts)
        return False

    def to_text(self) -> str:
        v = self.variant
        if v == "trivial":
            return "trivial"
        if v == "free":
            return f"free:{self.rank}"
        if v == "cyclic":
            return f"cyclic:{self.chain[0]}"
        if v == "finite_abelian":
            return "finite_abelian:" + ",".join(map(str, self.chain))
        if v == "fg_abelian":
            s = f"abelian:{self.rank}"
            return s + (":(" + ",".join(map(str, self.chain)) + ")" if self.chain else "")
        if v == "surface_orientable":
            return f"surface:{self.genus}"
        return "freeprod:(" + ",".join(p.to_text() for p in self.parts) + ")"

    def to_dict(self) -> dict:
        d = {"variant": self.variant, "text": self.to_text()}
        if self.variant in ("free", "fg_abelian"):
            d["rank"] = self.rank
        if self.chain:
            d["chain"] = list(self.chain)
        if self.genus:
            d["genus"] = self.genus
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d


VARIANTS = ("trivial", "free", "cyclic", "finite_abelian", "fg_abelian",
            "surface_orientable", "free_product")


def normalize_chain(orders) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    orders = [n for n in orders if n > 1]
    if not orders:
        return ()
    from .homology import smith_normal_form

    rows = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
    return tuple(d for d in smith_normal_form(rows).invariant_factors if d > 1)


def split_top_level(s: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {s!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {s!r}")
    out.append("".join(cur))
    return [x.strip() for x in out]


def strip_parens(s: str) -> str:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def _ints(s: str) -> tuple[int, ...]:
    s = strip_parens(s)
    if not s:
        return ()
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise ValueError(f"expected integers, got {s!r}") from None


def merge_numeric_tokens(tokens: list[str]) -> list[str]:
    """Reattach bare integers to the preceding item (``finite_abelian:2,4`` inside a list)."""
    out: list[str] = []
    for t in tokens:
        if out and t.isdigit():
            out[-1] += "," + t
        else:
            out.append(t)
    return out


def parse_group(text: str) -> GroupSpec:
    s = text.strip()
    head, _, rest = s.partition(":")
    head = head.strip().lower()
    try:
        if head == "trivial" and not rest:
            return GroupSpec.trivial()
        if head == "free":
            return GroupSpec.free(int(rest))
        if head == "cyclic":
            return GroupSpec.cyclic(int(rest))
        if head == "finite_abelian":
            return GroupSpec.finite_abelian(_ints(rest))
        if head == "abelian":
            r, _, chain = rest.partition(":")
            return GroupSpec.fg_abelian(int(r), _ints(chain))
        if head == "surface":
            return GroupSpec.surface(int(rest))
        if head == "freeprod":
            items = merge_numeric_tokens(split_top_level(strip_parens(rest)))
            return GroupSpec.free_product(parse_group(x) for x in items if x)
    except ValueError as e:
        raise UnsupportedSpec(f"cannot parse group {text!r}: {e}") from None
    raise UnsupportedSpec(f"cannot parse group {text!r}")
