"""Finite groups as multiplication tables.

Element 0 is the identity.  Tables are validated on construction
(closure, associativity, identity, inverses), which is affordable at the
orders used here.  Subgroup enumeration is by closing small generating
sets; that finds every subgroup for orders up to 8.
"""

import itertools
import json


class FiniteGroup:
    def __init__(self, table, name=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name or f"group of order {self.order}"
        self._validate()
        self.inverse = tuple(self._find_inverse(g) for g in range(self.order))

    def _validate(self):
        m = self.order
        if m < 1 or any(len(row) != m for row in self.table):
            raise ValueError("table must be square")
        for row in self.table:
            for entry in row:
                if not 0 <= entry < m:
                    raise ValueError("table entries must be element indices")
        for g in range(m):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("element 0 must be the identity")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")

    def _find_inverse(self, g):
        for h in range(self.order):
            if self.table[g][h] == 0 and self.table[h][g] == 0:
                return h
        raise ValueError(f"element {g} has no inverse")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def elements(self):
        return range(self.order)

    def nonidentity(self):
        return range(1, self.order)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    # -- constructors ---------------------------------------------------

    @classmethod
    def cyclic(cls, m):
        table = [[(a + b) % m for b in range(m)] for a in range(m)]
        return cls(table, name=f"Z/{m}")

    @classmethod
    def direct_product(cls, g, h):
        pairs = list(itertools.product(range(g.order), range(h.order)))
        index = {p: i for i, p in enumerate(pairs)}
        table = [
            [index[(g.mul(a1, b1), h.mul(a2, b2))] for (b1, b2) in pairs]
            for (a1, a2) in pairs
        ]
        return cls(table, name=f"{g.name}x{h.name}")

    @classmethod
    def from_permutations(cls, perms, name=None):
        """The group generated by permutations of range(k), must be closed."""
        perms = sorted(set(perms))
        identity = tuple(range(len(perms[0])))
        if identity not in perms:
            raise ValueError("identity permutation missing")
        ordered = [identity] + [p for p in perms if p != identity]
        index = {p: i for i, p in enumerate(ordered)}

        def compose(p, q):
            return tuple(p[q[i]] for i in range(len(p)))

        table = [[index[compose(p, q)] for q in ordered] for p in ordered]
        return cls(table, name=name)

    @classmethod
    def symmetric(cls, k):
        perms = [tuple(p) for p in itertools.permutations(range(k))]
        return cls.from_permutations(perms, name=f"S{k}")

    @classmethod
    def dihedral(cls, k):
        """Symmetries of the k-gon, order 2k."""
        perms = []
        base = list(range(k))
        for r in range(k):
            rot = tuple(base[(i + r) % k] for i in range(k))
            perms.append(rot)
            perms.append(tuple(reversed(rot)))
        return cls.from_permutations(perms, name=f"D{k}")

    @classmethod
    def quaternion(cls):
        """The quaternion group {1, -1, i, -i, j, -j, k, -k}."""
        names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        sign = {n: (-1 if n.startswith("-") else 1) for n in names}
        unit = {n: n.lstrip("-") for n in names}
        rule = {
            ("1", "1"): (1, "1"),
            ("1", "i"): (1, "i"),
            ("1", "j"): (1, "j"),
            ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"),
            ("j", "1"): (1, "j"),
            ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"),
            ("j", "j"): (-1, "1"),
            ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"),
            ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"),
            ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"),
            ("i", "k"): (-1, "j"),
        }

        def mul(a, b):
            s, u = rule[(unit[a], unit[b])]
            s *= sign[a] * sign[b]
            return ("" if s == 1 else "-") + u

        index = {n: i for i, n in enumerate(names)}
        table = [[index[mul(a, b)] for b in names] for a in names]
        return cls(table, name="Q8")

    # -- subgroups and cosets --------------------------------------------

    def close_subset(self, elements):
        seed = set(elements) | {0}
        frontier = list(seed)
        while frontier:
            a = frontier.pop()
            for b in list(seed):
                for c in (self.mul(a, b), self.mul(b, a), self.inv(a)):
                    if c not in seed:
                        seed.add(c)
                        frontier.append(c)
        return frozenset(seed)

    def subgroups(self):
        """All subgroups, as frozensets of element indices."""
        found = {frozenset([0]), frozenset(range(self.order))}
        for size in (1, 2, 3):
            for gens in itertools.combinations(range(1, self.order), size):
                found.add(self.close_subset(gens))
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def is_subgroup(self, subset):
        return self.close_subset(subset) == frozenset(subset)

    def cosets(self, subgroup):
        """Left cosets of a subgroup, as frozensets."""
        sub = frozenset(subgroup)
        out = set()
        for g in range(self.order):
            out.add(frozenset(self.mul(g, h) for h in sub))
        return tuple(sorted(out, key=lambda s: sorted(s)))


def group_from_descriptor(text):
    """Parse group names like Z/4, Z/2xZ/3, V4, S3, D4, Q8, or @table.json."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            return FiniteGroup(json.load(handle))
    named = {
        "V4": lambda: FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
        "S3": lambda: FiniteGroup.symmetric(3),
        "S4": lambda: FiniteGroup.symmetric(4),
        "D4": lambda: FiniteGroup.dihedral(4),
        "Q8": FiniteGroup.quaternion,
    }
    if text in named:
        return named[text]()
    factors = []
    for part in text.split("x"):
        part = part.strip()
        if not part.startswith("Z/"):
            raise ValueError(f"unrecognised group descriptor: {text}")
        tail = part[2:]
        if tail.endswith("Z"):
            tail = tail[:-1]
        factors.append(FiniteGroup.cyclic(int(tail)))
    group = factors[0]
    for extra in factors[1:]:
        group = FiniteGroup.direct_product(group, extra)
    return group
