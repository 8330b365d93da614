"""Mirror-graph recognition: per-class candidate automorphisms and certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .convex import ConvexCycle, enumerate_convex_cycles, is_convex
from .graphs import Graph
from .partial_cube import (
    NotPartialCube,
    ThetaEmbedding,
    antipode_map,
    check_isometry,
    embed,
    is_harmonic_even,
    theta_classes,
)

STAGE_NOT_BIPARTITE = "not-bipartite"
STAGE_NOT_PARTIAL_CUBE = "not-partial-cube"
STAGE_NOT_HARMONIC_EVEN = "not-harmonic-even"
STAGE_PAIRING_CONFLICT = "class-pairing-conflict"
STAGE_PAIRING_INCOMPLETE = "class-pairing-incomplete"
STAGE_NOT_AUTOMORPHISM = "candidate-not-automorphism"
STAGE_NOT_INVOLUTIVE_SWAP = "candidate-not-involutive-swap"

STAGES = (
    STAGE_NOT_BIPARTITE,
    STAGE_NOT_PARTIAL_CUBE,
    STAGE_NOT_HARMONIC_EVEN,
    STAGE_PAIRING_CONFLICT,
    STAGE_PAIRING_INCOMPLETE,
    STAGE_NOT_AUTOMORPHISM,
    STAGE_NOT_INVOLUTIVE_SWAP,
)


class PairingConflict(Exception):
    """Two convex cycles force different images for the same class."""

    def __init__(self, class_index: int, other: int, images: tuple[int, int],
                 cycles: tuple[tuple[int, ...], tuple[int, ...]]):
        self.class_index = class_index
        self.other = other
        self.images = images
        self.cycles = cycles
        super().__init__(
            f"class {other} paired with both {images[0]} and {images[1]} "
            f"while reflecting class {class_index}")


class PairingIncomplete(Exception):
    """Some class shares no convex cycle with the reflected class."""

    def __init__(self, class_index: int, missing: int):
        self.class_index = class_index
        self.missing = missing
        super().__init__(
            f"class {missing} shares no convex cycle with class {class_index}")


class CandidateNotAutomorphism(Exception):
    def __init__(self, class_index: int, witness):
        self.class_index = class_index
        self.witness = witness
        super().__init__(
            f"candidate for class {class_index} is not an automorphism "
            f"(witness {witness!r})")


class CandidateNotInvolutiveSwap(Exception):
    def __init__(self, class_index: int, witness):
        self.class_index = class_index
        self.witness = witness
        super().__init__(
            f"candidate for class {class_index} is not an involutive edge swap "
            f"(witness {witness!r})")


@dataclass(frozen=True)
class MirrorAutomorphism:
    """A verified reflection of the graph across one edge class.

    ``class_perm`` permutes class indices, ``flip_mask`` records which
    coordinates are complemented, and ``vertex_perm`` is the induced vertex
    permutation: coords[vertex_perm[x]] = permute-then-flip of coords[x].
    """

    class_index: int
    class_perm: tuple[int, ...]
    flip_mask: int
    vertex_perm: tuple[int, ...]

    def apply_coords(self, c: int) -> int:
        out = 0
        for j, pj in enumerate(self.class_perm):
            if (c >> j) & 1:
                out |= 1 << pj
        return out ^ self.flip_mask


@dataclass(frozen=True)
class MirrorCertificate:
    embedding: ThetaEmbedding
    automorphisms: tuple[MirrorAutomorphism, ...]
    convex_cycles: tuple[ConvexCycle, ...]


@dataclass(frozen=True)
class RejectReason:
    stage: str
    witness: object = None
    detail: str = ""


def candidate_class_permutation(e: ThetaEmbedding, cycles, class_index: int) -> tuple[int, ...]:
    """Class pairing forced by reflecting every convex cycle crossed by the class.

    On a cycle whose class-``i`` edges sit at positions p and p+half, the
    reflection swapping those edges maps edge position j to 2p - j, pairing
    their classes.  All such constraints must agree and cover every class.
    """
    pairing: dict[int, int] = {class_index: class_index}
    source: dict[int, tuple[int, ...]] = {class_index: ()}
    for cyc in cycles:
        if not cyc.crosses(class_index):
            continue
        p = cyc.classes.index(class_index)
        ln = cyc.length
        for j in range(ln):
            c1 = cyc.edge_class(j)
            c2 = cyc.edge_class((2 * p - j) % ln)
            for a, b in ((c1, c2), (c2, c1)):
                if a in pairing:
                    if pairing[a] != b:
                        raise PairingConflict(class_index, a, (pairing[a], b),
                                              (source[a], cyc.vertices))
                else:
                    pairing[a] = b
                    source[a] = cyc.vertices
    if len(pairing) < e.k:
        missing = next(j for j in range(e.k) if j not in pairing)
        raise PairingIncomplete(class_index, missing)
    perm = tuple(pairing[j] for j in range(e.k))
    if sorted(perm) != list(range(e.k)):
        raise PairingConflict(class_index, -1, (-1, -1), ((), ()))
    return perm


def build_candidate(e: ThetaEmbedding, class_index: int,
                    class_perm: tuple[int, ...]) -> MirrorAutomorphism:
    """Realize the unique candidate fixed by the class pairing, or reject.

    The flip mask is anchored on the smallest edge of the class; the vertex
    permutation then follows by coordinate lookup and is checked to be an
    involutive automorphism swapping every edge of the class.
    """
    g = e.graph
    anchor_u, anchor_v = min(e.classes[class_index])
    mapped_u = 0
    for j, pj in enumerate(class_perm):
        if (e.coords[anchor_u] >> j) & 1:
            mapped_u |= 1 << pj
    flip_mask = mapped_u ^ e.coords[anchor_v]
    cand = MirrorAutomorphism(class_index, class_perm, flip_mask, ())
    vertex_perm = []
    for x in range(g.n):
        y = e.coord_index.get(cand.apply_coords(e.coords[x]))
        if y is None:
            raise CandidateNotAutomorphism(class_index, witness=x)
        vertex_perm.append(y)
    for u, v in e.classes[class_index]:
        if vertex_perm[u] != v or vertex_perm[v] != u:
            raise CandidateNotInvolutiveSwap(class_index, witness=(u, v))
    for x in range(g.n):
        if vertex_perm[vertex_perm[x]] != x:
            raise CandidateNotInvolutiveSwap(class_index, witness=x)
    # automatic for realized hypercube isometries, asserted anyway
    for u, v in g.edges:
        if not g.has_edge(vertex_perm[u], vertex_perm[v]):
            raise CandidateNotAutomorphism(class_index, witness=(u, v))
    side0, side1 = e.sides[class_index]
    if {vertex_perm[x] for x in side0} != set(side1):
        raise CandidateNotInvolutiveSwap(class_index, witness=class_index)
    return MirrorAutomorphism(class_index, class_perm, flip_mask, tuple(vertex_perm))


def recognize(g: Graph) -> MirrorCertificate | RejectReason:
    """Decide whether g is a mirror graph; certificate on accept, staged reason on reject."""
    try:
        emb = embed(g)
    except NotPartialCube as exc:
        if exc.reason == "odd-cycle":
            return RejectReason(STAGE_NOT_BIPARTITE, witness=exc.witness,
                                detail="odd cycle found")
        return RejectReason(STAGE_NOT_PARTIAL_CUBE, witness=exc.witness,
                            detail=exc.reason)
    if not is_harmonic_even(emb):
        full = (1 << emb.k) - 1
        lonely = next(v for v in range(g.n)
                      if (emb.coords[v] ^ full) not in emb.coord_index)
        return RejectReason(STAGE_NOT_HARMONIC_EVEN, witness=lonely,
                            detail=f"vertex {lonely} has no vertex at distance {emb.k}")
    cycles = enumerate_convex_cycles(g, emb)
    automorphisms = []
    for i in range(emb.k):
        try:
            perm = candidate_class_permutation(emb, cycles, i)
            automorphisms.append(build_candidate(emb, i, perm))
        except PairingConflict as exc:
            return RejectReason(STAGE_PAIRING_CONFLICT,
                                witness={"class": i, "other": exc.other,
                                         "images": list(exc.images),
                                         "cycles": [list(c) for c in exc.cycles]},
                                detail=str(exc))
        except PairingIncomplete as exc:
            return RejectReason(STAGE_PAIRING_INCOMPLETE,
                                witness={"class": i, "missing": exc.missing},
                                detail=str(exc))
        except CandidateNotAutomorphism as exc:
            return RejectReason(STAGE_NOT_AUTOMORPHISM,
                                witness={"class": i, "witness": exc.witness},
                                detail=str(exc))
        except CandidateNotInvolutiveSwap as exc:
            return RejectReason(STAGE_NOT_INVOLUTIVE_SWAP,
                                witness={"class": i, "witness": exc.witness},
                                detail=str(exc))
    return MirrorCertificate(embedding=emb, automorphisms=tuple(automorphisms),
                             convex_cycles=tuple(cycles))


def verify_certificate(g: Graph, cert: MirrorCertificate) -> tuple[bool, str]:
    """Re-check every certificate invariant from scratch against the graph.

    Returns (True, "") or (False, name-of-first-failing-invariant).  Shares no
    state with ``recognize``: the class partition, isometry, convex cycles,
    and each automorphism property are recomputed from the graph.
    """
    e = cert.embedding
    try:
        fresh = theta_classes(g)
    except NotPartialCube:
        return False, "theta-partition"
    if tuple(tuple(c) for c in fresh) != e.classes:
        return False, "theta-partition"
    if e.k and e.coords[0] != 0:
        return False, "coords-root"
    for u, v in g.edges:
        if e.coords[u] ^ e.coords[v] != 1 << e.class_of[(u, v)]:
            return False, "coords-edge-bit"
    if check_isometry(g, e.coords, e.k) is not None:
        return False, "isometry"
    fresh_cycles = enumerate_convex_cycles(g, e)
    if set(c.vertices for c in fresh_cycles) != set(c.vertices for c in cert.convex_cycles):
        return False, "convex-cycles"
    if [a.class_index for a in cert.automorphisms] != list(range(e.k)):
        return False, "automorphism-count"
    ident = tuple(range(g.n))
    for a in cert.automorphisms:
        vp = a.vertex_perm
        if tuple(sorted(vp)) != ident:
            return False, "vertex-perm-bijection"
        if sorted(a.class_perm) != list(range(e.k)):
            return False, "class-perm-bijection"
        if a.class_perm[a.class_index] != a.class_index:
            return False, "class-perm-fixes-own-class"
        if e.k and not (a.flip_mask >> a.class_index) & 1:
            return False, "flip-mask-own-class"
        for u, v in g.edges:
            if not g.has_edge(vp[u], vp[v]):
                return False, "edge-preservation"
        if any(vp[vp[x]] != x for x in range(g.n)):
            return False, "involution"
        if any(vp[u] != v or vp[v] != u for u, v in e.classes[a.class_index]):
            return False, "class-edge-swap"
        if any(e.coords[vp[x]] != a.apply_coords(e.coords[x]) for x in range(g.n)):
            return False, "coordinate-form"
        side0, side1 = e.sides[a.class_index]
        if {vp[x] for x in side0} != set(side1):
            return False, "side-swap"
    return True, ""


# -- certificate JSON -----------------------------------------------------------


def certificate_payload(cert: MirrorCertificate) -> dict:
    e = cert.embedding
    return {
        "verdict": "mirror",
        "reason": None,
        "k": e.k,
        "class_of": {f"{u}-{v}": i for (u, v), i in sorted(e.class_of.items())},
        "coords": [e.coord_bits(v) for v in range(e.graph.n)],
        "automorphisms": [
            {
                "class": a.class_index,
                "class_perm": list(a.class_perm),
                "flip_mask": _mask_bits(a.flip_mask, e.k),
                "vertex_perm": list(a.vertex_perm),
            }
            for a in cert.automorphisms
        ],
        "convex_cycles": [list(c.vertices) for c in cert.convex_cycles],
    }


def reject_payload(reason: RejectReason) -> dict:
    return {
        "verdict": "not-mirror",
        "reason": {"stage": reason.stage, "witness": reason.witness,
                   "detail": reason.detail},
    }


def certificate_from_payload(g: Graph, payload: dict) -> MirrorCertificate:
    """Rebuild a certificate from its JSON form (no validation; verify separately)."""
    k = int(payload["k"])
    classes: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for key, i in payload["class_of"].items():
        u, v = (int(x) for x in key.split("-"))
        classes[int(i)].append((u, v))
    coords = [_bits_mask(s) for s in payload["coords"]]
    emb = ThetaEmbedding.from_parts(g, [sorted(c) for c in classes], coords)
    autos = tuple(
        MirrorAutomorphism(
            class_index=int(a["class"]),
            class_perm=tuple(int(j) for j in a["class_perm"]),
            flip_mask=_bits_mask(a["flip_mask"]),
            vertex_perm=tuple(int(x) for x in a["vertex_perm"]),
        )
        for a in payload["automorphisms"]
    )
    cycles = []
    for seq in payload["convex_cycles"]:
        seq = [int(x) for x in seq]
        cls = []
        for j in range(len(seq) // 2):
            a, b = seq[j], seq[(j + 1) % len(seq)]
            cls.append(emb.class_of[(a, b) if a < b else (b, a)])
        cycles.append(ConvexCycle(vertices=tuple(seq), classes=tuple(cls)))
    return MirrorCertificate(embedding=emb, automorphisms=autos,
                             convex_cycles=tuple(cycles))


def _mask_bits(mask: int, k: int) -> str:
    return format(mask, f"0{k}b")[::-1] if k else ""


def _bits_mask(bits: str) -> int:
    mask = 0
    for j, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << j
    return mask
