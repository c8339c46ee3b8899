"""Right modules over truncated algebras, and tensor products over an algebra."""

from __future__ import annotations

from dataclasses import dataclass

from ..coalg.structures import DEFAULT_TOL, Algebra
from ..errors import SpaceMismatch
from ..linalg import Op, Subspace, TruncatedSpace, compose, echelon, kernel_subspace, tensor_op, tensor_space
from ..residual import CheckReport, measure


@dataclass
class Module:
    """Right ``A``-module ``act: M⊗A -> M``."""

    space: TruncatedSpace
    over: Algebra
    action: Op
    name: str = "M"

    def __post_init__(self):
        if self.action.domain != tensor_space(self.space, self.over.space) or self.action.codomain != self.space:
            raise SpaceMismatch(f"action of {self.name} must map M⊗A to M")

    @property
    def prime(self) -> int:
        return self.space.prime

    @property
    def dim(self) -> int:
        return self.space.rank

    def identity(self) -> Op:
        return Op.identity(self.space, self.over.precision)

    def to_dict(self) -> dict:
        return {"name": self.name, "over": self.over.name, "space": self.space.to_dict(),
                "action": self.action.to_dict()}


def free_module(A: Algebra, basis: TruncatedSpace, name: str | None = None) -> Module:
    """``X⊗A`` with ``A`` acting on the right factor."""
    XA = tensor_space(basis, A.space)
    act = tensor_op(Op.identity(basis, A.precision), A.mult)
    return Module(XA, A, Op(tensor_space(XA, A.space), XA, act.columns, act.col_tails),
                  name or f"free({basis.rank},{A.name})")


def check_module(M: Module, tol: int = DEFAULT_TOL) -> CheckReport:
    """``act∘(act⊗id) = act∘(id⊗m)`` and ``act∘(id⊗u) = id``."""
    A = M.over
    I, IA = M.identity(), Op.identity(A.space, A.precision)
    rep = CheckReport(f"module:{M.name}", "module axioms")
    lhs = compose(M.action, tensor_op(M.action, IA))
    rhs = compose(M.action, tensor_op(I, A.mult))
    rep.add(measure(lhs - rhs, tol, "associativity"))
    unit = compose(M.action, tensor_op(I, A.unit))
    rep.add(measure(Op(M.space, M.space, unit.columns, unit.col_tails) - I, tol, "unit"))
    rep.details.update(dim=M.dim, over=A.name)
    return rep


def module_morphism_defect(f: Op, M: Module, N: Module) -> Op:
    """``f∘act_M - act_N∘(f⊗id)``."""
    IA = Op.identity(M.over.space, M.over.precision)
    return compose(f, M.action) - compose(N.action, tensor_op(f, IA))


def module_morphism_report(f: Op, M: Module, N: Module, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = CheckReport(f"module_morphism:{M.name}->{N.name}", "module morphism")
    rep.add(measure(module_morphism_defect(f, M, N), tol, "intertwining"))
    return rep


def restrict_scalars(M: Module, psi: Op, B: Algebra) -> Module:
    """``M`` over ``B`` through an algebra morphism ``ψ: B -> A``."""
    act = compose(M.action, tensor_op(M.identity(), psi))
    return Module(M.space, B, act, f"{M.name}|ψ")


def tensor_relations(M: Module, psi: Op, An: Algebra) -> Op:
    """``ma⊗x - m⊗ψ(a)x``: the map ``M⊗A⊗A_n -> M⊗A_n`` whose image is divided out in ``M⊗_A A_n``."""
    In = Op.identity(An.space, An.precision)
    left = tensor_op(M.action, In)
    right = tensor_op(M.identity(), compose(An.mult, tensor_op(psi, In)))
    return left - right


@dataclass
class BaseChange:
    """``M⊗_A A_n`` presented as a quotient of ``M⊗A_n``."""

    relations: Subspace
    ambient: TruncatedSpace

    @property
    def dim(self) -> int:
        return self.ambient.rank - self.relations.dim


def base_change(M: Module, psi: Op, An: Algebra, tol: int = DEFAULT_TOL) -> BaseChange:
    R = tensor_relations(M, psi, An)
    img = echelon(list(R.columns.values()), tol, space=R.codomain)
    return BaseChange(img, R.codomain)


def cokernel_dim(T: Op, tol: int = DEFAULT_TOL) -> int:
    return T.codomain.rank - echelon(list(T.columns.values()), tol, space=T.codomain).dim


def injective(T: Op, tol: int = DEFAULT_TOL) -> bool:
    return kernel_subspace(T, tol).dim == 0
