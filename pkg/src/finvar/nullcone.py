"""The Hilbert ideal and the nilpotence degree eta of the null cone.

eta(G, m) is the least d with m^d contained in the ideal generated by
the positive-degree invariants.  In the graded setting used here this
is 1 + the largest degree whose ideal slice is not the full component.
Also houses the harnesses for the subgroup-index inequality, the Phi
identity of its proof, and the two comparison lemmas linking eta with
generator bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExhausted, FinvarError, ModularGroupOrder
from .grouprep import Representation, SubgroupHandle, restrict_representation
from .invariants import beta, minimal_generators_up_to
from .linalg import GradedSubspaceBasis, SubspaceBuilder
from .polyring import (
    DEFAULT_DIMENSION_CAP,
    SparsePolynomial,
    component_to_vector,
    count_monomials,
    monomials_of_degree,
)
from .records import VerdictRecord

MAX_PHI_INDEX = 8


@dataclass(frozen=True)
class HilbertIdealComponent:
    degree: int
    basis: GradedSubspaceBasis
    full: bool


@dataclass
class EtaReport:
    eta: int | None
    per_degree: dict[int, bool]  # degree -> slice is full
    generator_source: str
    cap_used: int

    def to_json(self) -> dict:
        return {
            "eta": self.eta,
            "cap": self.cap_used,
            "generator_source": self.generator_source,
            "per_degree_full": {str(d): v for d, v in sorted(self.per_degree.items())},
        }


def _validated_ideal_generators(
    rep: Representation, gens: list[SparsePolynomial]
) -> list[SparsePolynomial]:
    out = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous() or g.degree() < 1:
            raise FinvarError("ideal generators must be homogeneous of positive degree")
        if not rep.is_invariant(g):
            raise FinvarError("ideal generator is not invariant")
        out.append(g)
    return out


def hilbert_ideal_component(
    rep: Representation,
    gens: list[SparsePolynomial],
    d: int,
    cap: int = DEFAULT_DIMENSION_CAP,
    validate: bool = True,
) -> HilbertIdealComponent:
    """Degree-d slice of the ideal generated by the given invariants."""
    if validate:
        gens = _validated_ideal_generators(rep, gens)
    fld = rep.group.field
    n = count_monomials(rep.layout.nvars, d)
    builder = SubspaceBuilder(fld, n)
    for g in gens:
        e = g.degree()
        if e > d:
            continue
        for m in monomials_of_degree(rep.layout, d - e, cap):
            prod = SparsePolynomial.monomial(fld, rep.layout, m) * g
            builder.add(component_to_vector(prod, d, cap))
            if builder.rank == n:
                break
        if builder.rank == n:
            break
    return HilbertIdealComponent(d, builder.basis(), builder.rank == n)


def default_ideal_generators(rep: Representation) -> list[SparsePolynomial]:
    """Invariant-ring generators up to the Noether cap; they generate
    the Hilbert ideal when |G| is invertible."""
    ledger = minimal_generators_up_to(rep, max(rep.group.order, 1))
    return ledger.generators()


def eta(
    rep: Representation,
    gens: list[SparsePolynomial] | None = None,
    cap: int | None = None,
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> EtaReport:
    """Nilpotence degree of the null cone.

    Without explicit generators, |G| must be invertible; the invariant
    ring is then generated in degrees <= |G| and eta <= |G| supplies the
    default cap.  User-supplied generator sets (the modular case)
    require an explicit cap; completeness of the set within the cap is
    the caller's responsibility.
    """
    if gens is None:
        fld = rep.group.field
        if fld.is_prime_field and rep.group.order % fld.p == 0:
            raise ModularGroupOrder(
                "supply ideal generators explicitly when p divides |G|"
            )
        gens = default_ideal_generators(rep)
        source = "computed-reynolds"
        if cap is None:
            cap = max(rep.group.order, 1)
    else:
        gens = _validated_ideal_generators(rep, gens)
        source = "user-supplied"
        if cap is None:
            raise ValueError("an explicit cap is required with user-supplied generators")
    per_degree: dict[int, bool] = {}
    eta_val: int | None = None
    for d in range(1, cap + 1):
        comp = hilbert_ideal_component(rep, gens, d, cap=dimension_cap, validate=False)
        per_degree[d] = comp.full
        if comp.full and eta_val is None:
            eta_val = d
    if eta_val is None:
        raise CapExhausted(cap, f"eta > cap {cap} (no full slice found)")
    if not all(per_degree[d] for d in range(eta_val, cap + 1)):
        raise FinvarError("ideal slices lost fullness above eta; arithmetic bug")
    return EtaReport(eta_val, per_degree, source, cap)


def check_index_inequality(rep: Representation, h: SubgroupHandle) -> VerdictRecord:
    """eta_G <= [G:H] * eta_H for a subgroup with invertible index."""
    fld = rep.group.field
    index = h.index_in_parent
    if fld.is_prime_field and index % fld.p == 0:
        raise FinvarError(f"index {index} not invertible in {fld}")
    eta_g = eta(rep).eta
    rep_h = restrict_representation(rep, h.member_indices)
    eta_h = eta(rep_h).eta
    return VerdictRecord(
        theorem="thm2.1",
        instance=f"{rep.group.name}/H{h.order}",
        lhs=eta_g,
        rhs=index * eta_h,
        holds=eta_g <= index * eta_h,
        detail={"eta_G": eta_g, "eta_H": eta_h, "index": index},
    )


def check_phi_identity(
    rep: Representation,
    h: SubgroupHandle,
    samples: list[SparsePolynomial],
    gens: list[SparsePolynomial] | None = None,
) -> VerdictRecord:
    """The telescoping identity behind the index inequality.

    samples supplies one H-invariant a_v per coset representative v.
    Checks: (i) the full expansion Phi = sum_u prod_v (v a_v - u a_v)
    is the zero polynomial, (ii) every Phi_S with S nonempty lies in the
    Hilbert ideal slice, (iii) prod_v v(a_v) lies in the Hilbert ideal.
    """
    group = rep.group
    fld = group.field
    trans = h.transversal
    d_idx = len(trans)
    if d_idx > MAX_PHI_INDEX:
        raise FinvarError(f"[G:H] = {d_idx} exceeds the Phi expansion cap {MAX_PHI_INDEX}")
    if fld.is_prime_field and d_idx % fld.p == 0:
        raise FinvarError(f"index {d_idx} not invertible in {fld}")
    if len(samples) != d_idx:
        raise FinvarError("one sample per coset representative required")
    rep_h = restrict_representation(rep, h.member_indices)
    for a in samples:
        if a.degree() >= 0 and not a.degree_part(0).is_zero():
            raise FinvarError("samples must have positive degree")
        if not rep_h.is_invariant(a):
            raise FinvarError("sample is not H-invariant")
    if gens is None:
        gens = default_ideal_generators(rep)

    translated = [rep.act(v, a) for v, a in zip(trans, samples)]

    phi = SparsePolynomial.zero(fld, rep.layout)
    for u in trans:
        prod = SparsePolynomial.constant(fld, rep.layout, 1)
        for v_pos, a in enumerate(samples):
            term = translated[v_pos] - rep.act(u, a)
            prod = prod * term
        phi = phi + prod
    phi_is_zero = phi.is_zero()

    def in_ideal(poly: SparsePolynomial) -> bool:
        for d, part in poly.homogeneous_parts().items():
            if d == 0:
                return False
            comp = hilbert_ideal_component(rep, gens, d, validate=False)
            if not comp.basis.contains(component_to_vector(part, d)):
                return False
        return True

    phi_s_ok = True
    positions = range(d_idx)
    for r in range(1, d_idx + 1):
        for subset in itertools.combinations(positions, r):
            outside = SparsePolynomial.constant(fld, rep.layout, 1)
            for v_pos in positions:
                if v_pos not in subset:
                    outside = outside * translated[v_pos]
            inside = SparsePolynomial.constant(fld, rep.layout, 1)
            for v_pos in subset:
                inside = inside * samples[v_pos]
            summed = SparsePolynomial.zero(fld, rep.layout)
            for u in trans:
                summed = summed + rep.act(u, inside)
            phi_s = outside * summed
            if not phi_s.is_zero() and not in_ideal(phi_s):
                phi_s_ok = False

    product = SparsePolynomial.constant(fld, rep.layout, 1)
    for t in translated:
        product = product * t
    product_ok = product.is_zero() or in_ideal(product)

    holds = phi_is_zero and phi_s_ok and product_ok
    return VerdictRecord(
        theorem="eq2.6",
        instance=f"{group.name}/H{h.order}",
        lhs="Phi expansion, Phi_S and product membership",
        rhs="0 resp. <m^G>",
        holds=holds,
        detail={
            "phi_zero": phi_is_zero,
            "phi_S_in_ideal": phi_s_ok,
            "product_in_ideal": product_ok,
        },
    )


def check_beta_le_eta(rep: Representation) -> VerdictRecord:
    """Generator bound against the nilpotence degree: beta <= eta."""
    b, _ = beta(rep)
    e = eta(rep).eta
    return VerdictRecord(
        theorem="lem3.1",
        instance=rep.group.name,
        lhs=b,
        rhs=e,
        holds=b <= e,
        detail={"beta": b, "eta": e},
    )


def check_eta_le_beta_AG(rep: Representation) -> VerdictRecord:
    """eta of the instance against beta of the adjoined-variables ring."""
    from .grouprep import adjoin_group_variables

    e = eta(rep).eta
    ag = adjoin_group_variables(rep)
    b_ag, _ = beta(ag)
    return VerdictRecord(
        theorem="lem3.2",
        instance=rep.group.name,
        lhs=e,
        rhs=b_ag,
        holds=e <= b_ag,
        detail={"eta": e, "beta_AG": b_ag},
    )
