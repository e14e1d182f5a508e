"""Built-in instance catalog and JSON instance loading.

Instance files follow the schema
``{"field": {"prime": 7} | {"rationals": true}, "generators": [[[...]]], "name": "..."}``
with integer matrix entries reduced into the field.  Built-in instances
are chosen so that any needed roots of unity exist in the field (a
faithful character of Z/m needs an m-th root of unity, so e.g. Z/3
appears as a character over GF(7)/GF(13) and as a 2x2 rotation over
GF(5) and Q).
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

from .errors import FinvarError
from .fields import Field
from .grouprep import MatrixGroup, Representation, generate_group, natural_representation
from .linalg import DenseMatrix
from .polyring import SparsePolynomial, VariableLayout, monomials_of_degree


@dataclass(frozen=True)
class Instance:
    name: str
    family: str
    field: Field
    rep: Representation
    faithful_character: bool = False

    @property
    def group(self) -> MatrixGroup:
        return self.rep.group

    @property
    def modular(self) -> bool:
        return self.field.is_prime_field and self.group.order % self.field.p == 0


_FIELDS = {"gf2": Field.gf(2), "gf5": Field.gf(5), "gf7": Field.gf(7), "gf13": Field.gf(13), "q": Field.rationals()}


def _mk(name, family, field, gens, faithful_character=False) -> Instance:
    group = generate_group([DenseMatrix.from_rows(field, g) for g in gens], name=name)
    return Instance(name, family, field, natural_representation(group), faithful_character)


def _root_of_unity(field: Field, order: int) -> int | None:
    if not field.is_prime_field:
        return None
    for a in range(2, field.p):
        x = a
        k = 1
        while x != 1:
            x = (x * a) % field.p
            k += 1
            if k > order:
                break
        if k == order:
            return a
    return None


def _swap_matrix(n: int) -> list[list[int]]:
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = 1
    return rows


@functools.lru_cache(maxsize=None)
def _build(name: str) -> Instance:
    family, _, tag = name.partition("-") if not name.startswith("char2") else ("char2", "-", name)
    if name in ("trivial-1var", "trivial-2var"):
        nv = 1 if "1var" in name else 2
        return _mk(name, "trivial", _FIELDS["gf5"], [[[1 if i == j else 0 for j in range(nv)] for i in range(nv)]],
                   faithful_character=(nv == 1))
    if name == "trivial-2var-q":
        return _mk(name, "trivial", _FIELDS["q"], [[[1, 0], [0, 1]]])
    parts = name.split("-")
    fld = _FIELDS.get(parts[-1])
    if family == "z2" and fld is not None:
        return _mk(name, "z2", fld, [[[-1]]], faithful_character=True)
    if family == "s2" and fld is not None:
        return _mk(name, "s2", fld, [[[0, 1], [1, 0]]])
    if family == "z3" and fld is not None:
        if parts[1] == "2dim":
            return _mk(name, "z3", _FIELDS[parts[2]], [[[0, -1], [1, -1]]])
        w = _root_of_unity(fld, 3)
        if w is None:
            raise FinvarError(f"no cube root of unity in {fld}")
        return _mk(name, "z3", fld, [[[w]]], faithful_character=True)
    if family == "z4" and fld is not None:
        if parts[1] == "2dim":
            return _mk(name, "z4", _FIELDS[parts[2]], [[[0, -1], [1, 0]]])
        w = _root_of_unity(fld, 4)
        if w is None:
            raise FinvarError(f"no fourth root of unity in {fld}")
        return _mk(name, "z4", fld, [[[w]]], faithful_character=True)
    if family == "klein4" and fld is not None:
        return _mk(name, "klein4", fld, [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]])
    if family == "s3" and fld is not None:
        return _mk(name, "s3", fld, [[[0, -1], [1, -1]], [[0, 1], [1, 0]]])
    if family == "char2":
        n = int(name.rsplit("n", 1)[1])
        return _mk(name, "char2", _FIELDS["gf2"], [_swap_matrix(n)])
    raise FinvarError(f"unknown instance {name!r}")


BUILTIN_NAMES = (
    "trivial-1var",
    "trivial-2var",
    "trivial-2var-q",
    "z2-gf5", "z2-gf7", "z2-gf13", "z2-q",
    "s2-gf5", "s2-gf7", "s2-gf13", "s2-q",
    "z3-gf7", "z3-gf13", "z3-2dim-gf5", "z3-2dim-q",
    "z4-gf5", "z4-gf13", "z4-2dim-gf7", "z4-2dim-q",
    "klein4-gf5", "klein4-gf7", "klein4-gf13", "klein4-q",
    "s3-gf5", "s3-gf7", "s3-gf13", "s3-q",
    "char2-swap-n1", "char2-swap-n2", "char2-swap-n3",
)


def instance(name: str) -> Instance:
    if name not in BUILTIN_NAMES:
        raise FinvarError(f"unknown instance {name!r}; have {', '.join(BUILTIN_NAMES)}")
    return _build(name)


def all_instances() -> list[Instance]:
    return [instance(n) for n in BUILTIN_NAMES]


def nonmodular_instances() -> list[Instance]:
    return [inst for inst in all_instances() if not inst.modular]


def char2_generators(inst: Instance, cap: int) -> list[SparsePolynomial]:
    """The invariant generators of the coordinate-swap involution in
    characteristic 2: all x_i y_i together with x^a + y^a for every
    exponent vector a with 1 <= |a| <= cap."""
    rep = inst.rep
    fld = inst.field
    n = rep.layout.nvars // 2
    lay = rep.layout
    gens = []
    for i in range(n):
        e = [0] * (2 * n)
        e[i] = 1
        e[n + i] = 1
        gens.append(SparsePolynomial.monomial(fld, lay, e))
    half = VariableLayout(n, 1)
    for d in range(1, cap + 1):
        for alpha in monomials_of_degree(half, d):
            ex = list(alpha) + [0] * n
            ey = [0] * n + list(alpha)
            gens.append(
                SparsePolynomial.monomial(fld, lay, ex)
                + SparsePolynomial.monomial(fld, lay, ey)
            )
    return gens


def load_instance_dict(obj: dict) -> Instance:
    """Instance from the JSON schema used by the CLI."""
    field = Field.from_json(obj["field"])
    gens = [DenseMatrix.from_rows(field, g) for g in obj["generators"]]
    name = obj.get("name", "instance")
    group = generate_group(gens, name=name)
    return Instance(name, obj.get("family", "custom"), field, natural_representation(group))


def load_instance_file(path: str) -> Instance:
    with open(path) as fh:
        return load_instance_dict(json.load(fh))
