"""
Finite orthomodular posets, their states, and P(q|p) by linear programming.

A FiniteOMP is the whole logic spelled out: element ids, the order relation
(stored transitively closed), the orthocomplement map, and the partial join on
orthogonal pairs. Three ways in:

  * from_blocks / boolean_algebra -- Greechie pasting. Each block is a Boolean
    algebra given by its atoms; a subset S of block B and a subset S' of block
    B' are the same element iff S = S' or their complements B minus S and
    B' minus S' coincide. Order and joins come from the blocks.
  * from_raw -- {"elements", "order", "orthocomplement", "joins"} JSON.
  * from_projections -- a finite family of projections of a Jordan algebra,
    closed under I - p, with order and joins read off the Jordan product.

States are non-negative, normalized, additive on orthogonal joins. A logic may
carry a declared finite state list; its convex hull is then the state set.
Without one, the full state polytope is used.

P(q|p) is Definition-style: minimize and maximize mu(q) over states with
mu(p) = 1. It exists iff the two optima coincide -- exactly, when every number
in the data is rational; within EPS_LP when the declared states carry floats.
Both optimizations run on the exact simplex in simplex.py.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from config import EPS_LP
from division_rings import parse_scalar, render_scalar
from projection_logic import is_orthogonal, leq, orthocomplement, orthogonal_join
from simplex import INFEASIBLE as LP_INFEASIBLE
from simplex import OPTIMAL, linprog_exact
from transition import TransitionResult

# Reasons on negative LP results.
INFEASIBLE = "infeasible"          # no state gives p probability 1
NOT_CONSTANT = "not_constant"      # mu(q) varies over {mu(p) = 1}

# First violated axiom, as reported by validate().
AXIOMS = ("poset", "b", "a", "c", "d", "complement_join")


class InvalidOMP(ValueError):
    """Malformed logic input: unknown ids, conflicting joins, no 0 or 1."""


@dataclass
class FiniteOMP:
    elements: List[str]
    order: FrozenSet[Tuple[str, str]]
    complement: Dict[str, str]
    joins: Dict[Tuple[str, str], str]
    zero: str
    one: str
    states: Optional[List[Dict[str, Any]]] = None
    atoms_of: Dict[str, FrozenSet[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise InvalidOMP("duplicate element ids")
        for a, b in self.order:
            if a not in known or b not in known:
                raise InvalidOMP(f"order pair ({a}, {b}) names an unknown element")
        for a, b in self.complement.items():
            if a not in known or b not in known:
                raise InvalidOMP(f"orthocomplement {a} -> {b} names an unknown element")
        for (a, b), c in self.joins.items():
            if not {a, b, c} <= known:
                raise InvalidOMP(f"join {a} + {b} = {c} names an unknown element")
        if self.zero not in known or self.one not in known:
            raise InvalidOMP("0 and 1 must be elements")
        if self.states is not None:
            self.states = [self._full_state(s) for s in self.states]

    # -- order --------------------------------------------------------------

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def orthogonal(self, a: str, b: str) -> bool:
        c = self.complement.get(b)
        return c is not None and self.le(a, c)

    def join(self, a: str, b: str) -> Optional[str]:
        return self.joins.get((a, b))

    def lower_bounds(self, a: str, b: str) -> List[str]:
        return [x for x in self.elements if self.le(x, a) and self.le(x, b)]

    def upper_bounds(self, a: str, b: str) -> List[str]:
        return [x for x in self.elements if self.le(a, x) and self.le(b, x)]

    def infimum(self, a: str, b: str) -> Optional[str]:
        lbs = self.lower_bounds(a, b)
        top = [x for x in lbs if all(self.le(y, x) for y in lbs)]
        return top[0] if len(top) == 1 else None

    def supremum(self, a: str, b: str) -> Optional[str]:
        ubs = self.upper_bounds(a, b)
        bottom = [x for x in ubs if all(self.le(x, y) for y in ubs)]
        return bottom[0] if len(bottom) == 1 else None

    def join_pairs(self) -> List[Tuple[str, str, str]]:
        """Each defined join once: (a, b, a + b) with a <= b in element order."""
        idx = {e: i for i, e in enumerate(self.elements)}
        return sorted(((a, b, c) for (a, b), c in self.joins.items() if idx[a] <= idx[b]),
                      key=lambda t: (idx[t[0]], idx[t[1]]))

    # -- states -------------------------------------------------------------

    def _full_state(self, values: Mapping[str, Any]) -> Dict[str, Any]:
        """A state given on every element, or (for pasted logics) on atoms only."""
        parsed = {k: parse_scalar(v) for k, v in values.items()}
        unknown = set(parsed) - set(self.elements)
        if unknown and not self.atoms_of:
            raise InvalidOMP(f"state names unknown elements: {sorted(unknown)}")
        if set(self.elements) <= set(parsed):
            return {e: parsed[e] for e in self.elements}
        if not self.atoms_of:
            missing = sorted(set(self.elements) - set(parsed))
            raise InvalidOMP(f"state is missing values for {missing}")
        out = {}
        zero = Fraction(0) if all(isinstance(v, Fraction) for v in parsed.values()) else 0.0
        for e in self.elements:
            if e in parsed:
                out[e] = parsed[e]
                continue
            try:
                out[e] = sum((parsed[a] for a in self.atoms_of[e]), zero)
            except KeyError as err:
                raise InvalidOMP(f"state gives no value for atom {err.args[0]}") from None
        return out

    def to_json(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "elements": list(self.elements),
            "order": sorted([a, b] for a, b in self.order),
            "orthocomplement": dict(self.complement),
            "joins": [[a, b, c] for a, b, c in self.join_pairs()],
            "zero": self.zero,
            "one": self.one,
        }
        if self.states is not None:
            doc["states"] = [{k: render_scalar(v) for k, v in s.items()} for s in self.states]
        return doc


def _transitive_closure(elements: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> FrozenSet[Tuple[str, str]]:
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for a, b in pairs:
        reach[idx[a]][idx[b]] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return frozenset((elements[i], elements[j]) for i in range(n) for j in range(n) if reach[i][j])


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent: Dict[Any, Any] = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _label(atoms: FrozenSet[str], full: bool) -> str:
    if not atoms:
        return "0"
    if full:
        return "1"
    return "+".join(sorted(atoms))


def from_blocks(blocks: Sequence[Sequence[str]], states: Optional[List[Mapping[str, Any]]] = None) -> FiniteOMP:
    """Greechie pasting of Boolean blocks given by their atoms. Elements are
    named by their shortest atom set ("a", "a+b"), with "0" and "1". Two
    blocks may share at most one atom."""
    if not blocks:
        raise InvalidOMP("need at least one block")
    block_atoms = [frozenset(b) for b in blocks]
    for b, raw in zip(block_atoms, blocks):
        if len(b) != len(raw) or not b:
            raise InvalidOMP(f"block {list(raw)} must list distinct atoms")
    for i, j in combinations(range(len(block_atoms)), 2):
        shared = block_atoms[i] & block_atoms[j]
        if len(shared) > 1:
            raise InvalidOMP(
                f"blocks {sorted(block_atoms[i])} and {sorted(block_atoms[j])} share atoms {sorted(shared)}; "
                "pasted blocks may share at most one atom"
            )

    uf = _UnionFind()
    by_set: Dict[FrozenSet[str], Tuple[int, FrozenSet[str]]] = {}
    by_complement: Dict[FrozenSet[str], Tuple[int, FrozenSet[str]]] = {}
    nodes: List[Tuple[int, FrozenSet[str]]] = []
    for bi, atoms in enumerate(block_atoms):
        ordered = sorted(atoms)
        for k in range(len(ordered) + 1):
            for combo in combinations(ordered, k):
                s = frozenset(combo)
                node = (bi, s)
                nodes.append(node)
                uf.find(node)
                comp = atoms - s
                if s in by_set:
                    uf.union(by_set[s], node)
                else:
                    by_set[s] = node
                if comp in by_complement:
                    uf.union(by_complement[comp], node)
                else:
                    by_complement[comp] = node

    classes: Dict[Any, List[Tuple[int, FrozenSet[str]]]] = {}
    for node in nodes:
        classes.setdefault(uf.find(node), []).append(node)

    def rep_key(node):
        bi, s = node
        return (len(s), sorted(s), bi)

    name_of: Dict[Any, str] = {}
    atoms_of: Dict[str, FrozenSet[str]] = {}
    for root, members in classes.items():
        best = min(members, key=rep_key)
        full = any(s == block_atoms[bi] for bi, s in members)
        empty = any(not s for _, s in members)
        name = "0" if empty else ("1" if full else _label(best[1], False))
        name_of[root] = name
        atoms_of[name] = best[1] if not full else block_atoms[0]

    def name(node) -> str:
        return name_of[uf.find(node)]

    elements = sorted(set(name_of.values()), key=lambda e: (e not in ("0",), e == "1", len(atoms_of[e]), e))
    order_pairs = set()
    complement: Dict[str, str] = {}
    joins: Dict[Tuple[str, str], str] = {}
    for bi, atoms in enumerate(block_atoms):
        subsets = [(n, name((bi, n[1]))) for n in nodes if n[0] == bi]
        for (_, s), ns in subsets:
            complement[ns] = name((bi, atoms - s))
            for (_, t), nt in subsets:
                if s <= t:
                    order_pairs.add((ns, nt))
                if not (s & t):
                    j = name((bi, s | t))
                    prev = joins.get((ns, nt))
                    if prev is not None and prev != j:
                        raise InvalidOMP(f"blocks disagree on {ns} + {nt}: {prev} vs {j}")
                    joins[(ns, nt)] = j

    return FiniteOMP(
        elements=elements,
        order=_transitive_closure(elements, order_pairs),
        complement=complement,
        joins=joins,
        zero="0",
        one="1",
        states=list(states) if states is not None else None,
        atoms_of=atoms_of,
    )


def boolean_algebra(atoms: Sequence[str], states: Optional[List[Mapping[str, Any]]] = None) -> FiniteOMP:
    """The powerset of `atoms` (2^n elements)."""
    return from_blocks([list(atoms)], states)


def from_raw(doc: Mapping[str, Any]) -> FiniteOMP:
    """{"elements", "order", "orthocomplement", "joins"[, "zero", "one",
    "states"]}. The order is closed transitively (and reflexively). Orthogonal
    pairs without a listed join get the supremum when the order has one."""
    try:
        elements = [str(e) for e in doc["elements"]]
        pairs = [(str(a), str(b)) for a, b in doc.get("order", [])]
        complement = {str(k): str(v) for k, v in doc["orthocomplement"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise InvalidOMP(f"raw logic needs 'elements' and 'orthocomplement': {e}") from e
    known = set(elements)
    for a, b in pairs:
        if a not in known or b not in known:
            raise InvalidOMP(f"order pair ({a}, {b}) names an unknown element")
    order = _transitive_closure(elements, pairs)

    zero = doc.get("zero") or next((x for x in elements if all((x, y) in order for y in elements)), None)
    one = doc.get("one") or next((x for x in elements if all((y, x) in order for y in elements)), None)
    if zero is None or one is None:
        raise InvalidOMP("the order has no least or no greatest element")

    joins: Dict[Tuple[str, str], str] = {}
    for a, b, c in doc.get("joins", []):
        a, b, c = str(a), str(b), str(c)
        for key in ((a, b), (b, a)):
            if joins.get(key, c) != c:
                raise InvalidOMP(f"conflicting joins for {a} + {b}")
            joins[key] = c
    omp = FiniteOMP(elements, order, complement, joins, str(zero), str(one), doc.get("states"))
    for a in elements:
        for b in elements:
            if (a, b) not in joins and omp.orthogonal(a, b):
                sup = omp.supremum(a, b)
                if sup is not None:
                    joins[(a, b)] = sup
    return omp


def from_json(doc: Mapping[str, Any]) -> FiniteOMP:
    """Blocks format {"blocks": [[atoms], ...]} or the raw format."""
    if "blocks" in doc:
        return from_blocks(doc["blocks"], doc.get("states"))
    return from_raw(doc)


def from_projections(projections: Mapping[str, Any], states: Optional[List[Mapping[str, Any]]] = None) -> FiniteOMP:
    """The finite sublogic spanned by labelled projections of one Jordan
    algebra. The family must contain 0, I and I - p for each p; order is
    p o q = p and a join is recorded when p + q is itself in the family."""
    labels = list(projections)

    def find(x) -> Optional[str]:
        return next((l for l in labels if projections[l].equals(x)), None)

    complement = {}
    for l in labels:
        c = find(orthocomplement(projections[l]))
        if c is None:
            raise InvalidOMP(f"the family has no orthocomplement for {l}")
        complement[l] = c
    pairs = [(a, b) for a in labels for b in labels if leq(projections[a], projections[b])]
    joins = {}
    for a in labels:
        for b in labels:
            if is_orthogonal(projections[a], projections[b]):
                c = find(orthogonal_join(projections[a], projections[b]))
                if c is not None:
                    joins[(a, b)] = c
    order = _transitive_closure(labels, pairs)
    zero = next((x for x in labels if projections[x].is_zero()), None)
    one = next((x for x in labels if complement[x] == zero), None) if zero is not None else None
    if zero is None or one is None:
        raise InvalidOMP("the family must contain 0 and I")
    return FiniteOMP(labels, order, complement, joins, zero, one, states)


def density_states(projections: Mapping[str, Any], densities: Sequence[Any]) -> List[Dict[str, Any]]:
    """mu_rho(p) = trace(rho o p) for each density element rho (positive,
    trace one)."""
    out = []
    for rho in densities:
        tr = rho.trace()
        if tr == 0:
            raise ValueError("density element has trace zero")
        out.append({l: p.element.trace_form(rho) / tr for l, p in projections.items()})
    return out


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

def _violation(axiom: str, detail: str) -> Dict[str, Any]:
    return {"valid": False, "axiom": axiom, "detail": detail}


def validate(omp: FiniteOMP) -> Dict[str, Any]:
    """Exhaustive axiom check; reports the first violation found. The order is
    checked as a bounded poset first, then (b) involutive complement, (a)
    antitone complement, (c) orthogonal joins are suprema, (d) the
    orthomodular law, and finally p + p' = 1."""
    E = omp.elements
    for a in E:
        for b in E:
            if a != b and omp.le(a, b) and omp.le(b, a):
                return _violation("poset", f"{a} <= {b} and {b} <= {a}")
        if not omp.le(omp.zero, a) or not omp.le(a, omp.one):
            return _violation("poset", f"{a} is not between 0 and 1")

    for a in E:
        c = omp.complement.get(a)
        if c is None:
            return _violation("b", f"{a} has no orthocomplement")
        if omp.complement.get(c) != a:
            return _violation("b", f"({a}')' = {omp.complement.get(c)}, not {a}")

    for q in E:
        for p in E:
            if omp.le(q, p) and not omp.le(omp.complement[p], omp.complement[q]):
                return _violation("a", f"{q} <= {p} but not {p}' <= {q}'")

    for p in E:
        for q in E:
            if omp.orthogonal(p, q):
                j = omp.join(p, q)
                if j is None:
                    return _violation("c", f"{p} and {q} are orthogonal but have no join")
                if omp.supremum(p, q) != j:
                    return _violation("c", f"{p} + {q} = {j} is not the supremum")

    for p in E:
        for q in E:
            if omp.le(q, p):
                m = omp.infimum(p, omp.complement[q])
                if m is None:
                    return _violation("d", f"{p} ^ {q}' does not exist")
                if omp.join(q, m) != p:
                    return _violation("d", f"{q} + ({p} ^ {q}') = {omp.join(q, m)}, not {p}")

    for p in E:
        if omp.join(p, omp.complement[p]) != omp.one:
            return _violation("complement_join", f"{p} + {p}' is not 1")

    return {"valid": True, "axiom": None, "detail": None, "elements": len(E)}


def is_state(omp: FiniteOMP, mu: Mapping[str, Any], tol: float = 0.0) -> bool:
    """mu(1) = 1, 0 <= mu <= 1, additive on every defined join."""
    if any(e not in mu for e in omp.elements):
        return False
    if abs(mu[omp.one] - 1) > tol:
        return False
    if any(mu[e] < -tol or mu[e] > 1 + tol for e in omp.elements):
        return False
    return all(abs(mu[c] - mu[a] - mu[b]) <= tol for a, b, c in omp.join_pairs())


# ---------------------------------------------------------------------------
# Linear programs over the state set
# ---------------------------------------------------------------------------

class _StateLP:
    """Variables and base constraints of the state set: one variable per
    element (full polytope) or one convex weight per declared state."""

    def __init__(self, omp: FiniteOMP, states: Optional[List[Mapping[str, Any]]] = None):
        self.omp = omp
        declared = states if states is not None else omp.states
        self.declared = [omp._full_state(s) for s in declared] if declared is not None else None
        self.floating = bool(self.declared) and any(
            isinstance(v, float) for s in self.declared for v in s.values())
        E = omp.elements
        if self.declared is None:
            self.n = len(E)
            self.idx = {e: i for i, e in enumerate(E)}
            self.A_eq: List[List[Any]] = [self._unit(omp.one), self._unit(omp.zero)]
            self.b_eq: List[Any] = [1, 0]
            for a, b, c in omp.join_pairs():
                row = [Fraction(0)] * self.n
                row[self.idx[c]] += 1
                row[self.idx[a]] -= 1
                row[self.idx[b]] -= 1
                self.A_eq.append(row)
                self.b_eq.append(0)
            self.A_ub = [self._unit(e) for e in E]
            self.b_ub = [1] * self.n
        else:
            self.n = len(self.declared)
            self.A_eq = [[1] * self.n]
            self.b_eq = [1]
            self.A_ub, self.b_ub = [], []

    def _unit(self, e: str) -> List[Any]:
        row = [Fraction(0)] * self.n
        row[self.idx[e]] = Fraction(1)
        return row

    def value_row(self, e: str) -> List[Any]:
        """Coefficients of mu(e) in the LP variables."""
        if self.declared is None:
            return self._unit(e)
        return [s[e] for s in self.declared]

    def solve(self, objective: List[Any], fixed: Sequence[Tuple[str, Any]]):
        A_eq = self.A_eq + [self.value_row(e) for e, _ in fixed]
        b_eq = self.b_eq + [v for _, v in fixed]
        return linprog_exact(objective, A_eq, b_eq, self.A_ub, self.b_ub)


def _check_elements(omp: FiniteOMP, *names: str) -> None:
    for x in names:
        if x not in omp.elements:
            raise InvalidOMP(f"unknown element {x!r}")


def transition_probability_lp(omp: FiniteOMP, p: str, q: str,
                              states: Optional[List[Mapping[str, Any]]] = None) -> TransitionResult:
    """min and max of mu(q) over states with mu(p) = 1."""
    _check_elements(omp, p, q)
    if p == omp.zero:
        raise ValueError("P(q|p) needs p != 0")
    lp = _StateLP(omp, states)
    row = lp.value_row(q)
    lo = lp.solve(row, [(p, 1)])
    if lo.status == LP_INFEASIBLE:
        return TransitionResult(False, None, 0.0, INFEASIBLE, path="lp")
    hi = lp.solve([-v for v in row], [(p, 1)])
    if lo.status != OPTIMAL or hi.status != OPTIMAL:
        raise ValueError(f"state LP did not reach an optimum ({lo.status}, {hi.status})")
    vmin, vmax = lo.objective, -hi.objective
    gap = vmax - vmin
    exists = gap <= EPS_LP if lp.floating else gap == 0
    if not exists:
        return TransitionResult(False, None, float(gap), NOT_CONSTANT, path="lp")
    s = (vmin + vmax) / 2
    return TransitionResult(True, float(s) if lp.floating else s, float(gap), path="lp")


def strong_report(omp: FiniteOMP, states: Optional[List[Mapping[str, Any]]] = None) -> Dict[str, Any]:
    """For every q not below p, look for a state with mu(q) = 1 and mu(p) < 1
    (minimize mu(p) subject to mu(q) = 1)."""
    lp = _StateLP(omp, states)
    checked = 0
    for q in omp.elements:
        for p in omp.elements:
            if omp.le(q, p):
                continue
            checked += 1
            res = lp.solve(lp.value_row(p), [(q, 1)])
            if res.status != OPTIMAL:
                return {"strong": False, "pair": [q, p], "detail": f"no state gives {q} probability 1",
                        "pairs_checked": checked}
            if res.objective >= 1:
                return {"strong": False, "pair": [q, p],
                        "detail": f"every state with mu({q}) = 1 has mu({p}) = 1", "pairs_checked": checked}
    return {"strong": True, "pair": None, "detail": None, "pairs_checked": checked}


def is_strong(omp: FiniteOMP, states: Optional[List[Mapping[str, Any]]] = None) -> bool:
    return strong_report(omp, states)["strong"]


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass
class OMPMorphism:
    source: FiniteOMP
    target: FiniteOMP
    mapping: Dict[str, str]

    def __post_init__(self) -> None:
        missing = [e for e in self.source.elements if e not in self.mapping]
        if missing:
            raise InvalidOMP(f"morphism leaves {missing} unmapped")
        bad = [v for v in self.mapping.values() if v not in self.target.elements]
        if bad:
            raise InvalidOMP(f"morphism maps into unknown target elements {bad}")

    def __call__(self, e: str) -> str:
        return self.mapping[e]


def _in_hull(omp: FiniteOMP, mu: Mapping[str, Any], declared: List[Mapping[str, Any]]) -> bool:
    full = [omp._full_state(s) for s in declared]
    A_eq = [[1] * len(full)] + [[s[e] for s in full] for e in omp.elements]
    b_eq = [1] + [mu[e] for e in omp.elements]
    return linprog_exact([0] * len(full), A_eq, b_eq).status == OPTIMAL


def check_morphism(m: OMPMorphism, source_states: Optional[List[Mapping[str, Any]]] = None,
                   target_states: Optional[List[Mapping[str, Any]]] = None) -> Dict[str, Any]:
    """(a) pi(1) = 1; (b) orthogonal pairs stay orthogonal and
    pi(p + q) = pi(p) + pi(q); (c) mu o pi is a source state -- in the hull of
    the declared source states when there are any -- for every target state."""
    src, tgt = m.source, m.target
    if m(src.one) != tgt.one:
        return {"ok": False, "condition": "a", "detail": f"pi(1) = {m(src.one)}"}
    for a, b, c in src.join_pairs():
        if not tgt.orthogonal(m(a), m(b)):
            return {"ok": False, "condition": "b",
                    "detail": f"{a}, {b} orthogonal but {m(a)}, {m(b)} are not"}
        if tgt.join(m(a), m(b)) != m(c):
            return {"ok": False, "condition": "b",
                    "detail": f"pi({a} + {b}) = {m(c)}, not {tgt.join(m(a), m(b))}"}

    tstates = target_states if target_states is not None else tgt.states
    sstates = source_states if source_states is not None else src.states
    pulled = 0
    for mu in tstates or []:
        full = tgt._full_state(mu)
        back = {e: full[m(e)] for e in src.elements}
        tol = EPS_LP if any(isinstance(v, float) for v in back.values()) else 0
        if not is_state(src, back, tol):
            return {"ok": False, "condition": "c", "detail": "a pulled-back state is not a source state"}
        if sstates is not None and not _in_hull(src, back, sstates):
            return {"ok": False, "condition": "c",
                    "detail": "a pulled-back state lies outside the declared source states"}
        pulled += 1
    return {"ok": True, "condition": None, "detail": None, "states_pulled_back": pulled}
