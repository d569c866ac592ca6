"""Block spaces for genus-g handlebodies (equivalently, by restriction, the
closed surfaces bounding them) and the Dehn twist / bounding pair operators
acting on them.

Two models are provided and cross-checked:

* direct: covectors on the g-th tensor power of the canonical end that
  intertwine into the trivial module;
* relative center: the center of Hom(G, G x A^(g-1)) relative B = End(G),
  realized on G x A^(g-1) through the free-module identification
  Hom(G, N) = N, F -> F(1), with G the regular module.

The twist about the i-th handle meridian acts in the direct model by
precomposition with (left multiplication by the ribbon element) in slot i;
in the relative-center model by the ribbon action on the ambient module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import HopfData, MissingRibbon
from .linalg import (
    KernelBasis,
    Matrix,
    OrderCertificate,
    inverse,
    operator_order,
    simultaneous_kernel,
    tensor_product,
)
from .repcat import (
    HomSpace,
    Module,
    adjoint_module,
    hom_space,
    regular_module,
    tensor_module,
    tensor_power,
    twist,
)


class BlocksError(Exception):
    pass


class ModelRequiresPositiveGenus(BlocksError):
    pass


class HandleOutOfRange(BlocksError):
    pass


class GenusCapExceeded(BlocksError):
    pass


DIRECT = "direct"
RELATIVE_CENTER = "center"


def default_genus_cap(h: HopfData) -> int:
    if h.dim <= 8:
        return 3
    if h.dim <= 36:
        return 2
    return 1


@dataclass
class BlockSpace:
    algebra: HopfData
    genus: int
    model: str
    basis: KernelBasis
    ambient: Module
    covectors: bool  # True for the direct model (basis elements pair with the ambient)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def __repr__(self):
        return (
            f"BlockSpace({self.algebra.name}, genus={self.genus}, model={self.model}, "
            f"dim={self.dim})"
        )


_BLOCK_CACHE: dict = {}


def block_space(h: HopfData, genus: int, model: str = DIRECT, genus_cap: int | None = None) -> BlockSpace:
    """The block space of the genus-g handlebody, in the chosen model."""
    if genus < 0:
        raise BlocksError("genus must be non-negative")
    if model not in (DIRECT, RELATIVE_CENTER):
        raise BlocksError(f"unknown model {model!r}")
    if model == RELATIVE_CENTER and genus < 1:
        raise ModelRequiresPositiveGenus("the relative-center model needs genus >= 1")
    cap = genus_cap if genus_cap is not None else default_genus_cap(h)
    if genus > cap:
        raise GenusCapExceeded(f"genus {genus} exceeds cap {cap} for dim {h.dim}")
    key = (id(h), genus, model)
    if key not in _BLOCK_CACHE:
        if model == DIRECT:
            _BLOCK_CACHE[key] = _direct_block(h, genus)
        else:
            _BLOCK_CACHE[key] = _center_block(h, genus)
    return _BLOCK_CACHE[key]


# the closed-surface spaces for twists supported in the handlebody agree with
# the handlebody spaces by restriction; both names are exposed
surface_block_space = block_space


def _direct_block(h: HopfData, genus: int) -> BlockSpace:
    F = h.field
    power = tensor_power(adjoint_module(h), genus)
    mats = []
    ident = Matrix.identity(F, power.dim)
    for g in h.generating_indices():
        diff = power.act(g).sub(ident.scale(h.counit[g]))
        mats.append(diff.transpose())
    basis = simultaneous_kernel(mats)
    return BlockSpace(h, genus, DIRECT, basis, power, covectors=True)


def _center_block(h: HopfData, genus: int) -> BlockSpace:
    F = h.field
    reg = regular_module(h)
    if genus == 1:
        ambient = reg
        right_in_ambient = {g: h.right_mult_matrix(g) for g in h.generating_indices()}
    else:
        rest = tensor_power(adjoint_module(h), genus - 1)
        ambient = tensor_module(reg, rest)
        ident_rest = Matrix.identity(F, rest.dim)
        right_in_ambient = {
            g: tensor_product(h.right_mult_matrix(g), ident_rest)
            for g in h.generating_indices()
        }
    mats = [right_in_ambient[g].sub(ambient.act(g)) for g in h.generating_indices()]
    basis = simultaneous_kernel(mats)
    return BlockSpace(h, genus, RELATIVE_CENTER, basis, ambient, covectors=False)


def restrict_operator(block: BlockSpace, ambient_op: Matrix, spot_checks: int = 3) -> Matrix:
    """Matrix of an ambient operator restricted to the block subspace.

    The kernel basis is in reduced form, so coordinates are read off at the
    free columns; a few rows are re-expanded and compared exactly as a
    bookkeeping check.
    """
    F = block.algebra.field
    basis = block.basis
    images = []
    for vec in basis.vectors:
        if block.covectors:
            images.append(ambient_op.apply_left(vec))
        else:
            images.append(ambient_op.apply_right(vec))
    out = Matrix(F, basis.dim, basis.dim)
    for j, img in enumerate(images):
        for k, col in enumerate(basis.free_cols):
            v = img[col]
            if not F.is_zero(v):
                out.rows[k][j] = v
    for j in range(min(spot_checks, basis.dim)):
        img = images[j]
        recon = [F.zero] * basis.ncols
        for k in range(basis.dim):
            c = out.rows[k].get(j, F.zero)
            if F.is_zero(c):
                continue
            bvec = basis.vectors[k]
            for t in range(basis.ncols):
                x = bvec[t]
                if not F.is_zero(x):
                    recon[t] = F.add(recon[t], F.mul(c, x))
        if any(not F.eq(a, b) for a, b in zip(recon, img)):
            raise BlocksError("restricted operator left the block subspace")
    return out


def end_twist(h: HopfData) -> Matrix:
    """Left multiplication by the ribbon element on the canonical end.

    This is the twist that a meridian Dehn twist induces on the end variable;
    centrality of the ribbon element makes it an intertwiner of the adjoint
    action (post-checked), and it satisfies rho_M(v * x) = twist(M) rho_M(x)
    for every module M, matching the end projections.
    """
    if h.ribbon is None:
        raise MissingRibbon(h.name)
    lv = h.left_mult_of(h.ribbon)
    ad = adjoint_module(h)
    for g in h.generating_indices():
        if lv.mul(ad.act(g)) != ad.act(g).mul(lv):
            raise BlocksError("end twist failed the adjoint intertwiner post-check")
    return lv


@dataclass
class MCGOperator:
    kind: str
    block: BlockSpace
    matrix: Matrix
    certificate: OrderCertificate

    def to_json(self):
        return {
            "kind": self.kind,
            "genus": self.block.genus,
            "model": self.block.model,
            "block_dim": self.block.dim,
            "certificate": self.certificate.to_json(),
        }


def nonseparating_twist_op(block: BlockSpace, handle: int, cap: int | None = None) -> MCGOperator:
    """Twist about the meridian of the given handle (1-based) on a direct-model block."""
    h = block.algebra
    g = block.genus
    if block.model != DIRECT:
        raise BlocksError("nonseparating_twist_op expects a direct-model block")
    if not (1 <= handle <= g):
        raise HandleOutOfRange(f"handle {handle} not in 1..{g}")
    lv = end_twist(h)
    F = h.field
    factor_dims = [h.dim] * g
    op = None
    for i, d in enumerate(factor_dims, start=1):
        piece = lv if i == handle else Matrix.identity(F, d)
        op = piece if op is None else tensor_product(op, piece)
    mat = restrict_operator(block, op)
    cert = operator_order(mat, cap=cap)
    return MCGOperator(f"nonseparating(handle={handle})", block, mat, cert)


def center_twist_op(block: BlockSpace, cap: int | None = None) -> MCGOperator:
    """The meridian twist on a relative-center block: the ribbon action on the
    ambient module restricted to the center (precomposition with the twist of
    the generator under Hom(G, N) = N)."""
    h = block.algebra
    if block.model != RELATIVE_CENTER:
        raise BlocksError("center_twist_op expects a relative-center block")
    if h.ribbon is None:
        raise MissingRibbon(h.name)
    ambient_op = block.ambient.act_element(h.ribbon)
    mat = restrict_operator(block, ambient_op)
    cert = operator_order(mat, cap=cap)
    return MCGOperator("nonseparating(center-model)", block, mat, cert)


@dataclass
class SeparatingTwist:
    genus_left: int
    genus_right: int
    hom: HomSpace
    matrix: Matrix
    certificate: OrderCertificate
    twist_left_order: OrderCertificate
    twist_right_order: OrderCertificate

    @property
    def dim(self) -> int:
        return self.hom.dim

    def to_json(self):
        return {
            "kind": f"separating({self.genus_left},{self.genus_right})",
            "block_dim": self.dim,
            "certificate": self.certificate.to_json(),
            "twist_order_left_part": self.twist_left_order.to_json(),
            "twist_order_right_part": self.twist_right_order.to_json(),
        }


_SEPARATING_CACHE: dict = {}


def separating_twist_op(h: HopfData, genus_left: int, genus_right: int,
                        cap: int | None = None) -> SeparatingTwist:
    """Twist about the standard separating meridian splitting handles
    {1..g'} from {g'+1..g}: postcomposition with the twist of the right end
    power on Hom(A^(g'), A^(g''))."""
    key = (id(h), genus_left, genus_right, cap)
    if key in _SEPARATING_CACHE:
        return _SEPARATING_CACHE[key]
    if genus_left < 1 or genus_right < 1:
        raise BlocksError("separating split requires both genera >= 1")
    a = adjoint_module(h)
    left = tensor_power(a, genus_left)
    right = tensor_power(a, genus_right)
    hom = hom_space(left, right)
    theta_right = twist(right)
    theta_left = twist(left)
    F = h.field
    out = Matrix(F, hom.dim, hom.dim)
    for j, f in enumerate(hom.basis):
        coords = hom.coordinates(theta_right.mul(f))
        for k, c in enumerate(coords):
            if not F.is_zero(c):
                out.rows[k][j] = c
    # bookkeeping check on the first basis element
    if hom.dim:
        if not hom.contains_matrix(theta_right.mul(hom.basis[0])):
            raise BlocksError("separating twist left the hom space")
    cert = operator_order(out, cap=cap)
    result = SeparatingTwist(
        genus_left,
        genus_right,
        hom,
        out,
        cert,
        operator_order(theta_left, cap=cap),
        operator_order(theta_right, cap=cap),
    )
    _SEPARATING_CACHE[key] = result
    return result


def bounding_pair_op(h: HopfData, x: Module, y: Module) -> tuple[HomSpace, Matrix]:
    """The bounding-pair action f -> twist(Y) . f . (twist(X)^-1 x id) on
    Hom(X x A, Y)."""
    if h.ribbon is None:
        raise MissingRibbon(h.name)
    a = adjoint_module(h)
    source = tensor_module(x, a)
    hom = hom_space(source, y)
    theta_y = twist(y)
    theta_x_inv = inverse(twist(x))
    pre = tensor_product(theta_x_inv, Matrix.identity(h.field, a.dim))
    F = h.field
    out = Matrix(F, hom.dim, hom.dim)
    for j, f in enumerate(hom.basis):
        g = theta_y.mul(f).mul(pre)
        coords = hom.coordinates(g)
        for k, c in enumerate(coords):
            if not F.is_zero(c):
                out.rows[k][j] = c
    return hom, out
