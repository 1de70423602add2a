"""Structure files: a JSON object ``{"structures": {name: declaration}}``.

A declaration is an object with a ``kind``.  Fields that take another
structure accept either a name (string) or an inline declaration.  Groups
may be written ``{"moduli": [...]}`` and semigroups ``{"labels": [...],
"table": [[...]]}`` without a kind.  Elements are integer lists.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .abelian import (
    AbelianGroup,
    FiniteAbelianGroup,
    FiniteSemigroup,
    SemigroupMap,
    Subgroup,
    cyclic_group,
    segment_monoid,
    to_cyclic,
    trivial_group,
)
from .errors import BudgetError, GammaError, StructureFileError, UnresolvedReferenceError
from .filtration import Filtration, check_filtration
from .grading import (
    GradedGammaRing,
    canonical_grading,
    check_internal_grading,
    graded_from_components,
    trivial_grading,
)
from .hom import ModuleHom, check_hom
from .module import (
    FilteredModule,
    GammaModule,
    GradedGammaModule,
    check_filtered_module,
    check_graded_module,
    check_module_axioms,
    regular_module,
    table_module,
    zero_action_module,
)
from .ring import (
    GammaRing,
    Ideal,
    check_axioms,
    direct_product,
    integer_gamma_ring,
    is_ideal,
    make_ideal,
    matrix_gamma_ring,
    opposite,
    polynomial_ring,
    quotient_by_ideal,
    semigroup_gamma_ring,
    table_ring,
    zero_gamma_ring,
)
from .verdict import Verdict

def _tuple(x) -> tuple:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise StructureFileError(f"element must be a list of integers, got {x!r}", x)
    return tuple(x)


def _elements(xs) -> list:
    if not isinstance(xs, list):
        raise StructureFileError(f"expected a list of elements, got {xs!r}", xs)
    return [_tuple(x) for x in xs]


@dataclass
class StructureSet:
    """Resolved structures by name, with declaration kinds and load-time verdicts."""

    objects: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    validation: dict = field(default_factory=dict)

    def __getitem__(self, name):
        try:
            return self.objects[name]
        except KeyError:
            raise UnresolvedReferenceError(f"no structure named {name!r}", name) from None

    def __contains__(self, name):
        return name in self.objects

    def __len__(self):
        return len(self.objects)

    def names(self) -> list:
        return list(self.objects)


class _Loader:
    def __init__(self, decls: dict):
        self.decls = decls
        self.objects: dict = {}
        self.stack: list = []

    def resolve(self, ref, want=None):
        if isinstance(ref, str):
            if ref in self.objects:
                obj = self.objects[ref]
            else:
                if ref not in self.decls:
                    raise UnresolvedReferenceError(f"unresolved reference {ref!r}", ref)
                if ref in self.stack:
                    cycle = self.stack[self.stack.index(ref):] + [ref]
                    raise StructureFileError(f"cyclic definition: {' -> '.join(cycle)}", tuple(cycle))
                self.stack.append(ref)
                try:
                    obj = self.build(self.decls[ref], ref)
                finally:
                    self.stack.pop()
                self.objects[ref] = obj
        elif isinstance(ref, dict):
            obj = self.build(ref, None)
        else:
            raise StructureFileError(f"expected a name or a declaration, got {ref!r}", ref)
        return self._coerce(obj, want) if want else obj

    @staticmethod
    def _coerce(obj, want):
        if want == "ring":
            if isinstance(obj, GradedGammaRing):
                return obj.ring
            if isinstance(obj, GammaRing):
                return obj
        elif want == "group":
            if isinstance(obj, AbelianGroup):
                return obj
        elif want == "semigroup":
            if isinstance(obj, FiniteSemigroup):
                return obj
        elif want == "graded":
            if isinstance(obj, GradedGammaRing):
                return obj
            if isinstance(obj, GammaRing) and obj.canonical_grading is not None:
                return canonical_grading(obj)
        elif want == "module":
            if isinstance(obj, GradedGammaModule):
                return obj.module
            if isinstance(obj, GammaModule):
                return obj
        elif want == "any_module":
            if isinstance(obj, (GammaModule, GradedGammaModule)):
                return obj
        elif want == "filtration":
            if isinstance(obj, Filtration):
                return obj
        elif want == "ideal":
            if isinstance(obj, Ideal):
                return obj
        raise StructureFileError(f"expected a {want}, got {type(obj).__name__}", want)

    @staticmethod
    def _kind(decl: dict) -> str:
        if "kind" in decl:
            return decl["kind"]
        if "moduli" in decl:
            return "group"
        if "labels" in decl or "cyclic" in decl or "segment" in decl:
            return "semigroup"
        raise StructureFileError(f"declaration has no kind: {decl!r}", None)

    def _field(self, decl, key, name=None):
        if key not in decl:
            raise StructureFileError(f"{name or 'inline ' + str(decl.get('kind'))}: missing field {key!r}", key)
        return decl[key]

    def build(self, decl: dict, name):
        if not isinstance(decl, dict):
            raise StructureFileError(f"{name}: declaration must be an object", name)
        kind = self._kind(decl)
        f = functools.partial(self._field, decl, name=name)
        builder = getattr(self, "_build_" + kind, None)
        if builder is None:
            raise StructureFileError(f"{name}: unknown kind {kind!r}", kind)
        obj = builder(decl, f, name)
        if name is not None and hasattr(obj, "name") and getattr(obj, "name", None) is None:
            try:
                obj.name = name
            except AttributeError:
                pass
        return obj

    # groups and semigroups

    def _build_group(self, decl, f, name):
        moduli = f("moduli")
        if not isinstance(moduli, list) or not all(isinstance(m, int) for m in moduli):
            raise StructureFileError(f"{name}: moduli must be a list of integers", moduli)
        return FiniteAbelianGroup(moduli)

    def _build_semigroup(self, decl, f, name):
        if "cyclic" in decl:
            return cyclic_group(int(decl["cyclic"]))
        if "segment" in decl:
            return segment_monoid(int(decl["segment"]))
        if decl.get("trivial"):
            return trivial_group()
        return FiniteSemigroup(f("labels"), f("table"), require_abelian=bool(decl.get("require_abelian", False)))

    def _build_semigroup_map(self, decl, f, name):
        return SemigroupMap(self.resolve(f("domain"), "semigroup"), self.resolve(f("codomain"), "semigroup"), f("images"))

    # rings

    def _build_integer(self, decl, f, name):
        return integer_gamma_ring(int(f("k")), name=name)

    def _build_table(self, decl, f, name):
        carrier = self.resolve(f("carrier"), "group")
        gamma = self.resolve(f("gamma"), "group")
        products = {}
        for row in decl.get("products", []):
            if not isinstance(row, list) or len(row) != 4:
                raise StructureFileError(f"{name}: product rows are [x, a, y, value]", row)
            x, a, y, v = (_tuple(t) for t in row)
            products[(x, a, y)] = carrier.check(v)
        return table_ring(carrier, gamma, products, name=name)

    def _build_zero_ring(self, decl, f, name):
        return zero_gamma_ring(self.resolve(f("carrier"), "group"), self.resolve(f("gamma"), "group"), name=name)

    def _build_matrix(self, decl, f, name):
        base = int(decl["k"]) if "k" in decl else self.resolve(f("base"), "ring")
        return matrix_gamma_ring(base, int(f("m")), int(f("n")), name=name)

    def _build_semigroup_ring(self, decl, f, name):
        return semigroup_gamma_ring(self.resolve(f("base"), "ring"), self.resolve(f("G"), "semigroup"), name=name)

    def _build_product(self, decl, f, name):
        return direct_product([self.resolve(r, "ring") for r in f("factors")], name=name)

    def _source_ring(self, decl, f):
        return self.resolve(decl["of"] if "of" in decl else f("ring"), "ring")

    def _build_opposite(self, decl, f, name):
        return opposite(self._source_ring(decl, f), name=name)

    def _build_polynomial(self, decl, f, name):
        return polynomial_ring(self.resolve(f("base"), "ring"), int(f("D")), name=name)

    def _ideal_of(self, ring, ref):
        if isinstance(ref, list):
            return make_ideal(ring, _elements(ref), "two-sided")
        return self.resolve(ref, "ideal")

    def _build_quotient(self, decl, f, name):
        ring = self._source_ring(decl, f)
        return quotient_by_ideal(ring, self._ideal_of(ring, f("ideal")), name=name)

    def _build_ideal(self, decl, f, name):
        ring = self.resolve(f("ring"), "ring")
        side = decl.get("side", "two-sided")
        return Ideal(ring, Subgroup(ring.carrier, _elements(f("elements"))), side)

    # gradings

    def _components(self, carrier, comps, name):
        if not isinstance(comps, dict):
            raise StructureFileError(f"{name}: components must map degree labels to element lists", comps)
        return {str(g): Subgroup(carrier, _elements(xs)) for g, xs in comps.items()}

    def _build_internal_grading(self, decl, f, name):
        ring = self.resolve(f("ring"), "ring")
        G = self.resolve(f("G"), "semigroup")
        return GradedGammaRing(ring, G, self._components(ring.carrier, f("components"), name), name=name)

    def _build_canonical_grading(self, decl, f, name):
        return canonical_grading(self.resolve(f("ring"), "ring"))

    def _build_trivial_grading(self, decl, f, name):
        return trivial_grading(self.resolve(f("ring"), "ring"), self.resolve(f("G"), "semigroup"))

    def _build_graded(self, decl, f, name):
        G = self.resolve(f("G"), "semigroup")
        gamma = self.resolve(f("gamma"), "group")
        comps = {str(g): self.resolve(c, "group") for g, c in f("components").items()}
        for g in G.labels:
            comps.setdefault(g, FiniteAbelianGroup([]))
        tables: dict = {}
        for row in decl.get("products", []):
            if not isinstance(row, list) or len(row) != 6:
                raise StructureFileError(f"{name}: graded product rows are [g, h, x, a, y, value]", row)
            g, h = str(row[0]), str(row[1])
            x, a, y, v = (_tuple(t) for t in row[2:])
            tables.setdefault((g, h), {})[(comps[g].check(x), gamma.check(a), comps[h].check(y))] = v

        def rule_for(table, zero):
            return lambda x, a, y: table.get((x, a, y), zero)

        products = {gh: rule_for(t, comps[G.mul(*gh)].zero) for gh, t in tables.items()}
        return graded_from_components(G, comps, gamma, products, name=name)

    # filtrations and modules

    def _build_filtration(self, decl, f, name):
        ring = self.resolve(f("ring"), "ring")
        return Filtration(ring, [Subgroup(ring.carrier, _elements(c)) for c in f("chain")])

    def _build_module(self, decl, f, name):
        ring = self.resolve(f("ring"), "ring")
        carrier = self.resolve(f("carrier"), "group")
        values = {}
        for row in decl.get("action", []):
            if not isinstance(row, list) or len(row) != 4:
                raise StructureFileError(f"{name}: action rows are [r, a, m, value]", row)
            r, a, m, v = (_tuple(t) for t in row)
            values[(r, a, m)] = carrier.check(v)
        return table_module(ring, carrier, values, name=name)

    def _build_regular_module(self, decl, f, name):
        return regular_module(self.resolve(f("ring"), "ring"), name=name)

    def _build_zero_module(self, decl, f, name):
        return zero_action_module(self.resolve(f("ring"), "ring"), self.resolve(f("carrier"), "group"), name=name)

    def _build_graded_module(self, decl, f, name):
        graded = self.resolve(f("grading"), "graded")
        module = self.resolve(decl["module"], "module") if "module" in decl else regular_module(graded.ring)
        if "components" in decl:
            comps = self._components(module.carrier, decl["components"], name)
        elif module.carrier == graded.carrier:
            comps = graded.components
        else:
            raise StructureFileError(f"{name}: components are required for a non-regular module", name)
        return GradedGammaModule(graded, module, comps, name=name)

    def _build_filtered_module(self, decl, f, name):
        filt = self.resolve(f("filtration"), "filtration")
        module = self.resolve(decl["module"], "module") if "module" in decl else regular_module(filt.ring)
        chain = [Subgroup(module.carrier, _elements(c)) for c in decl["chain"]] if "chain" in decl else filt.chain
        return FilteredModule(filt, module, chain)

    def _build_hom(self, decl, f, name):
        source = self.resolve(f("source"), "any_module")
        target = self.resolve(f("target"), "any_module")
        values = {}
        for row in f("values"):
            if not isinstance(row, list) or len(row) != 2:
                raise StructureFileError(f"{name}: hom rows are [x, value]", row)
            values[_tuple(row[0])] = _tuple(row[1])
        phi = decl.get("phi")
        return HomDecl(ModuleHom(source, target, values), {_tuple(a): _tuple(b) for a, b in phi} if phi else None)


@dataclass
class HomDecl:
    """A hom as declared in a file, with its optional Gamma automorphism."""

    hom: ModuleHom
    phi: dict | None


def validate(obj) -> Verdict:
    """The validator that matches a loaded object's type."""
    if isinstance(obj, HomDecl):
        return check_hom(obj.hom, obj.phi)
    if isinstance(obj, GradedGammaModule):
        return check_graded_module(obj)
    if isinstance(obj, FilteredModule):
        return check_filtered_module(obj)
    if isinstance(obj, GammaModule):
        return check_module_axioms(obj)
    if isinstance(obj, Filtration):
        return check_filtration(obj)
    if isinstance(obj, GradedGammaRing):
        v = check_axioms(obj.ring)
        return v if not v else check_internal_grading(obj)
    if isinstance(obj, GammaRing):
        return check_axioms(obj)
    if isinstance(obj, Ideal):
        return is_ideal(obj.ring, obj.subgroup, obj.side)
    return Verdict.passed()


def parse_text(text: str, source: str = "<string>") -> dict:
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"{source}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}", (exc.lineno, exc.colno)) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("structures", {}), dict):
        raise StructureFileError(f"{source}: top level must be an object with a 'structures' object", None)
    return doc.get("structures", {})


def load_text(text: str, *, lazy: bool = False, source: str = "<string>") -> StructureSet:
    """Resolve every declaration; unless ``lazy``, run each one's validator.

    Validation outcomes are kept in ``validation`` (Verdict, or BudgetError
    when a check exceeds the enumeration budget) rather than raised.  A
    structure too large to build under the budget is left out of
    ``objects`` and recorded the same way.
    """
    decls = parse_text(text, source)
    loader = _Loader(decls)
    out = StructureSet()
    for name in decls:
        try:
            out.objects[name] = loader.resolve(name)
        except BudgetError as exc:
            # too large to build under the current budget
            out.validation[name] = exc
            continue
        except GammaError as exc:
            if isinstance(exc, StructureFileError):
                raise
            raise StructureFileError(f"{name}: {exc}", exc.witness) from exc
        decl = decls[name]
        out.kinds[name] = loader._kind(decl) if isinstance(decl, dict) else None
    if not lazy:
        for name, obj in out.objects.items():
            if name in out.validation:
                continue
            try:
                out.validation[name] = validate(obj)
            except BudgetError as exc:
                out.validation[name] = exc
    return out


def load(path, *, lazy: bool = False) -> StructureSet:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise StructureFileError(f"cannot read {path}: {exc}", str(path)) from None
    return load_text(text, lazy=lazy, source=str(path))


# --- emission -------------------------------------------------------------------


def _cyclic(group: AbelianGroup):
    target, fwd, _ = to_cyclic(group)
    return target, fwd


def emit_group(group: AbelianGroup) -> dict:
    return {"moduli": list(_cyclic(group)[0].moduli)}


def emit_semigroup(G: FiniteSemigroup) -> dict:
    return {"kind": "semigroup", "labels": list(G.labels), "table": G.label_table()}


def emit_ring(ring: GammaRing):
    """``(declaration, carrier map)``: a table ring on cyclic coordinates."""
    C, fwd = _cyclic(ring.carrier)
    Gc, gfwd = _cyclic(ring.gamma)
    rows = sorted([list(fwd[x]), list(gfwd[a]), list(fwd[y]), list(fwd[v])] for (x, a, y), v in ring.product_dict().items())
    return {"kind": "table", "carrier": {"moduli": list(C.moduli)}, "gamma": {"moduli": list(Gc.moduli)}, "products": rows}, fwd


def emit_grading(graded: GradedGammaRing, name: str) -> dict:
    """Declarations for ``name.ring``, ``name.G`` and the internal grading ``name``."""
    ring_decl, fwd = emit_ring(graded.ring)
    comps = {g: sorted(list(fwd[x]) for x in c.elements) for g, c in graded.components.items()}
    return {
        f"{name}.ring": ring_decl,
        f"{name}.G": emit_semigroup(graded.G),
        name: {"kind": "internal_grading", "ring": f"{name}.ring", "G": f"{name}.G", "components": comps},
    }


def emit_external_graded(graded: GradedGammaRing, pieces: dict, name: str) -> dict:
    """A ``graded`` declaration from typed components.

    ``pieces[g]`` is the abstract group of degree g; the flat carrier of
    ``graded`` must be their product, in label order.
    """
    G = graded.G
    labels = G.labels
    cyc = {g: _cyclic(pieces[g]) for g in labels}
    Gc, gfwd = _cyclic(graded.gamma)
    carrier = graded.carrier
    slot = {g: i for i, g in enumerate(labels)}
    rows = []
    for g in labels:
        for h in labels:
            t = G.mul(g, h)
            for x in pieces[g].elements:
                if x == pieces[g].zero:
                    continue
                fx = carrier.embed(slot[g], x)
                for a in graded.gamma.elements:
                    for y in pieces[h].elements:
                        if y == pieces[h].zero:
                            continue
                        v = carrier.split(graded.ring.mul(fx, a, carrier.embed(slot[h], y)))[slot[t]]
                        if v != pieces[t].zero:
                            rows.append([g, h, list(cyc[g][1][x]), list(gfwd[a]), list(cyc[h][1][y]), list(cyc[t][1][v])])
    return {
        f"{name}.G": emit_semigroup(G),
        name: {
            "kind": "graded",
            "G": f"{name}.G",
            "gamma": {"moduli": list(Gc.moduli)},
            "components": {g: {"moduli": list(cyc[g][0].moduli)} for g in labels},
            "products": rows,
        },
    }


def dumps(decls: dict) -> str:
    return json.dumps({"structures": decls}, indent=2) + "\n"
