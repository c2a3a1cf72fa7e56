"""Slit-tori surfaces and empirical saddle-connection counting.

This is the one module that works in double precision: it builds the
triple-of-tori translation surface with a short slit (three square-tiled...
rather, three flat tori cyclically reglued along a slit of holonomy ``t``),
enumerates all saddle connections up to a radius by developing triangles into
the plane, groups them into families by holonomy, and turns the family counts
into empirical Siegel-Veech constants ``c_k = N_k(R) * Area / (pi R^2)``.

The surface: one square torus C/lambda(Z+iZ) and two copies of
C/(aZ + (b+id)Z), each slit along the same segment of holonomy ``t`` based at
the marked point, with the slit sides reglued cyclically across the three
tori.  The result has genus 3 and two cone points of angle 6*pi; the three
copies of the slit form a family of three saddle connections sharing endpoints
and holonomy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import AmbiguousGrouping, DegenerateDirection, SlitTooLong
from .exactq import lambda_of
from .prototypes import TripleProto

Edge = tuple[int, int]  # (triangle index, edge index 0..2)


def _cross(z: complex, w: complex) -> float:
    return z.real * w.imag - z.imag * w.real


class SaddleConnection(NamedTuple):
    start: int  # cone point class id
    end: int
    holonomy: complex

    @property
    def length(self) -> float:
        return abs(self.holonomy)

    @property
    def angle(self) -> float:
        return cmath.phase(self.holonomy)

    def sort_key(self) -> tuple:
        return (self.length, self.angle, self.start, self.end)


@dataclass
class FlatSurface:
    """A triangulated translation surface.

    ``triangles[t]`` are the three vertex coordinates of triangle ``t`` in its
    own chart; edge ``(t, i)`` runs from vertex ``i`` to vertex ``(i+1) % 3``.
    ``glue`` is the orientation-reversing involution on directed edges (glued
    edges carry opposite vectors), and every identification is a translation.
    """

    triangles: list[tuple[complex, complex, complex]]
    glue: dict[Edge, Edge]
    area_exact: float = 0.0
    vertex_class: dict[Edge, int] = field(default_factory=dict)
    cone_angles: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.vertex_class:
            self._classify_vertices()

    # -- structure -----------------------------------------------------------

    def edge_vector(self, edge: Edge) -> complex:
        t, i = edge
        tri = self.triangles[t]
        return tri[(i + 1) % 3] - tri[i]

    def corner_angle(self, t: int, i: int) -> float:
        tri = self.triangles[t]
        u = tri[(i + 1) % 3] - tri[i]
        v = tri[(i + 2) % 3] - tri[i]
        return math.atan2(_cross(u, v), (u * v.conjugate()).real)

    @property
    def area(self) -> float:
        return sum(
            _cross(tri[1] - tri[0], tri[2] - tri[0]) / 2 for tri in self.triangles
        )

    def _classify_vertices(self) -> None:
        # Walk each vertex star: from corner (t, i), crossing the outgoing
        # edge (t, i) lands on the corner at the glued edge's endpoint.
        classes: dict[Edge, int] = {}
        angles: dict[int, float] = {}
        next_id = 0
        for t in range(len(self.triangles)):
            for i in range(3):
                if (t, i) in classes:
                    continue
                cid = next_id
                next_id += 1
                total = 0.0
                cur = (t, i)
                while cur not in classes:
                    classes[cur] = cid
                    total += self.corner_angle(*cur)
                    t2, e2 = self.glue[cur]
                    cur = (t2, (e2 + 1) % 3)
                angles[cid] = total
        self.vertex_class = classes
        self.cone_angles = angles

    def zeros(self) -> list[int]:
        """Class ids of the cone points (total angle away from 2*pi)."""
        return sorted(
            cid
            for cid, ang in self.cone_angles.items()
            if abs(ang - 2 * math.pi) > 1e-9
        )

    def check(self, rtol: float = 1e-9) -> None:
        """Assert the structural invariants; raises AssertionError on failure."""
        scale = max(abs(v) for tri in self.triangles for v in tri)
        for t, tri in enumerate(self.triangles):
            assert abs(sum(self.edge_vector((t, i)) for i in range(3))) <= rtol * scale
            assert _cross(tri[1] - tri[0], tri[2] - tri[0]) > 0, "triangle not ccw"
        for edge, other in self.glue.items():
            assert self.glue[other] == edge, "gluing is not an involution"
            assert (
                abs(self.edge_vector(edge) + self.edge_vector(other)) <= rtol * scale
            ), "glued edges must carry opposite vectors"
        excess = 0.0
        for cid, ang in self.cone_angles.items():
            k = round(ang / (2 * math.pi))
            assert abs(ang - 2 * math.pi * k) <= 1e-9 * max(1.0, ang), (
                f"vertex class {cid} has angle {ang}, not a multiple of 2*pi"
            )
            excess += ang - 2 * math.pi
        genus_term = round(excess / (2 * math.pi)) + 2  # 2g - 2 + 2
        assert abs(excess - 2 * math.pi * (genus_term - 2)) <= 1e-9
        if self.area_exact:
            assert abs(self.area - self.area_exact) <= rtol * self.area_exact


# ---------------------------------------------------------------------------
# Construction.
# ---------------------------------------------------------------------------


def _adjust_basis(u: complex, v: complex, t: complex, eps: float) -> tuple[complex, complex]:
    """Replace (u, v) by an oriented basis of the same lattice with ``t`` in its open cone."""
    det = _cross(u, v)
    if det < 0:
        u, v = v, u
        det = -det
    alpha = _cross(t, v) / det
    beta = _cross(u, t) / det
    if abs(alpha) <= eps or abs(beta) <= eps:
        raise DegenerateDirection(
            f"slit direction {t} is (nearly) parallel to a lattice generator"
        )
    if alpha > 0 and beta > 0:
        return u, v
    if alpha < 0 and beta < 0:
        return -u, -v
    if alpha < 0:  # beta > 0
        return v, -u
    return -v, u  # alpha > 0, beta < 0


def systole_estimate(p: TripleProto) -> float:
    """A (tight, for short slits) lower estimate of the shortest lattice vector."""
    lam = lambda_of(p.D, p.e).to_float()
    shortest = lam
    u, v = complex(p.a), complex(p.b, p.d)
    for m in range(-2, 3):
        for n in range(-2, 3):
            if m == n == 0:
                continue
            shortest = min(shortest, abs(m * u + n * v))
    return shortest


def default_slit(p: TripleProto, frac: float = 0.05) -> complex:
    """A generic short slit: direction ``(1/pi, 1/e)``, length ``frac * systole``."""
    direction = complex(1 / math.pi, 1 / math.e)
    return direction / abs(direction) * (frac * systole_estimate(p))


def build_slit_triple(p: TripleProto, t: complex) -> FlatSurface:
    """Build the cyclically-slit triple-of-tori surface for prototype ``p``.

    Each torus is triangulated by a fan of four triangles from the slit
    endpoint ``R = t`` inside a fundamental parallelogram with the other slit
    endpoint ``L = 0`` at its corner; the doubled slit edge of torus ``j`` is
    reglued to torus ``j + 1 (mod 3)``.  Area is ``lambda^2 + 2ad``.
    """
    lam = lambda_of(p.D, p.e).to_float()
    lattices = [
        (complex(lam), complex(0, lam)),
        (complex(p.a), complex(p.b, p.d)),
        (complex(p.a), complex(p.b, p.d)),
    ]
    sys_len = systole_estimate(p)
    if abs(t) >= 0.5 * sys_len:
        raise SlitTooLong(f"|t| = {abs(t):.6g} >= half the systole {sys_len:.6g}")
    triangles: list[tuple[complex, complex, complex]] = []
    glue: dict[Edge, Edge] = {}
    for j, (u0, v0) in enumerate(lattices):
        u, v = _adjust_basis(u0, v0, t, eps=1e-12)
        corners = (0j, u, u + v, v)
        base = 4 * j
        for k in range(4):
            triangles.append((corners[k], corners[(k + 1) % 4], t))
        # Fan edges between consecutive triangles (corner -> t vs t -> corner).
        for k in range(3):
            glue[(base + k, 1)] = (base + k + 1, 2)
            glue[(base + k + 1, 2)] = (base + k, 1)
        # Torus side identifications: bottom with top, right with left.
        glue[(base + 0, 0)] = (base + 2, 0)
        glue[(base + 2, 0)] = (base + 0, 0)
        glue[(base + 1, 0)] = (base + 3, 0)
        glue[(base + 3, 0)] = (base + 1, 0)
    # Slit regluing: side (t -> 0) of torus j with side (0 -> t) of torus j+1.
    for j in range(3):
        jn = (j + 1) % 3
        glue[(4 * j + 0, 2)] = (4 * jn + 3, 1)
        glue[(4 * jn + 3, 1)] = (4 * j + 0, 2)
    area = lam * lam + 2 * p.a * p.d
    return FlatSurface(triangles=triangles, glue=glue, area_exact=area)


# ---------------------------------------------------------------------------
# Saddle-connection enumeration (wedge development search).
# ---------------------------------------------------------------------------


def _segment_distance(a: complex, b: complex) -> float:
    """Distance from the origin to the segment [a, b]."""
    ab = b - a
    denom = (ab * ab.conjugate()).real
    if denom == 0.0:
        return abs(a)
    s = -(a.real * ab.real + a.imag * ab.imag) / denom
    if s <= 0.0:
        return abs(a)
    if s >= 1.0:
        return abs(b)
    return abs(a + s * ab)


def enumerate_sc(s: FlatSurface, R: float) -> list[SaddleConnection]:
    """All saddle connections of length <= R, one record per orientation.

    From every corner of every triangle at a cone point, the wedge between the
    two adjacent edges is developed across glued triangles (translations
    only); a developed vertex strictly inside the current direction sector is
    a saddle connection.  The wedge-boundary directions are exactly the
    triangulation edges, recorded directly.  Deterministic: results are
    sorted by (length, angle, endpoints).
    """
    if R <= 0:
        return []
    zeros = set(s.zeros())
    triangles = s.triangles
    glue = s.glue
    vclass = s.vertex_class
    found: list[SaddleConnection] = []
    for t in range(len(triangles)):
        tri = triangles[t]
        for i in range(3):
            start = vclass[(t, i)]
            if start not in zeros:
                continue
            apex = tri[i]
            lo = tri[(i + 1) % 3] - apex
            hi = tri[(i + 2) % 3] - apex
            # The wedge's low boundary is the directed edge (t, i) itself.
            if abs(lo) <= R:
                found.append(SaddleConnection(start, vclass[(t, (i + 1) % 3)], lo))
            # Develop the wedge interior, starting at the opposite edge.
            stack = [(t, (i + 1) % 3, -apex, lo, hi)]
            while stack:
                ct, ce, offset, slo, shi = stack.pop()
                if _cross(slo, shi) <= 0.0:
                    continue
                x = triangles[ct][ce] + offset
                y = triangles[ct][(ce + 1) % 3] + offset
                if _segment_distance(x, y) > R:
                    continue
                nt, ne = glue[(ct, ce)]
                noffset = y - triangles[nt][ne]
                k = (ne + 2) % 3
                w = triangles[nt][k] + noffset
                # A sector boundary ray always passes through an already-found
                # vertex (a cone point), so a vertex collinear with it is not
                # the endpoint of a new saddle connection; exclude the boundary
                # with a relative band so round-off cannot admit it in one
                # orientation and drop it in the other.
                inside_lo = _cross(slo, w) > 1e-12 * abs(slo) * abs(w)
                inside_hi = _cross(w, shi) > 1e-12 * abs(shi) * abs(w)
                if inside_lo and inside_hi and abs(w) <= R:
                    found.append(SaddleConnection(start, vclass[(nt, k)], w))
                # Left sub-edge x -> w, sector clipped above by w.
                if inside_lo:
                    stack.append((nt, (ne + 1) % 3, noffset, slo, w if inside_hi else shi))
                # Right sub-edge w -> y, sector clipped below by w.
                if inside_hi:
                    stack.append((nt, (ne + 2) % 3, noffset, w if inside_lo else slo, shi))
    found.sort(key=SaddleConnection.sort_key)
    return found


# ---------------------------------------------------------------------------
# Families and Siegel-Veech estimates.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SCFamily:
    start: int
    end: int
    holonomy: complex
    multiplicity: int


def group_families(
    connections: list[SaddleConnection], tol: float
) -> list[SCFamily]:
    """Group connections with equal ordered endpoints and holonomy within ``tol``.

    Raises :class:`AmbiguousGrouping` when two holonomies with the same
    endpoints are distinct yet closer than ``2 * tol``; with ``tol = 0`` only
    exact duplicates group.
    """
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    cell = tol if tol > 0 else None
    # reps: (start, end) -> list of (holonomy, count), bucketed on a tol-grid.
    buckets: dict[tuple, list[int]] = {}
    reps: list[list] = []  # [start, end, holonomy, count]
    for sc in connections:
        if cell is None:
            key = (sc.start, sc.end, sc.holonomy.real, sc.holonomy.imag)
            idx = buckets.get(key)
            if idx is None:
                buckets[key] = [len(reps)]
                reps.append([sc.start, sc.end, sc.holonomy, 1])
            else:
                reps[idx[0]][3] += 1
            continue
        cx = math.floor(sc.holonomy.real / cell)
        cy = math.floor(sc.holonomy.imag / cell)
        matches = []
        near = []
        for dx in (-2, -1, 0, 1, 2):
            for dy in (-2, -1, 0, 1, 2):
                for idx in buckets.get((sc.start, sc.end, cx + dx, cy + dy), ()):
                    dist = abs(reps[idx][2] - sc.holonomy)
                    if dist <= tol:
                        matches.append(idx)
                    elif dist <= 2 * tol:
                        near.append(idx)
        if len(matches) > 1 or (matches and near) or (not matches and near):
            raise AmbiguousGrouping(
                f"holonomy {sc.holonomy} within 2*tol of two distinct families"
            )
        if matches:
            reps[matches[0]][3] += 1
        else:
            buckets.setdefault((sc.start, sc.end, cx, cy), []).append(len(reps))
            reps.append([sc.start, sc.end, sc.holonomy, 1])
    return [
        SCFamily(start=r[0], end=r[1], holonomy=r[2], multiplicity=r[3])
        for r in reps
    ]


def estimate_sv(
    s: FlatSurface, R: float, tol: float | None = None
) -> tuple[float, float, float]:
    """Empirical Siegel-Veech constants from the zero-joining family counts.

    ``c_k = N_k(R) * Area / (pi * R^2)`` where ``N_k`` counts multiplicity-k
    families of connections from the first cone point to the second.  For a
    meaningful estimate ``R`` should be large enough to yield at least ~10^3
    families.
    """
    counts = family_counts(s, R, tol)
    norm = s.area / (math.pi * R * R)
    return tuple(counts.get(k, 0) * norm for k in (1, 2, 3))  # type: ignore[return-value]


def family_counts(
    s: FlatSurface, R: float, tol: float | None = None
) -> dict[int, int]:
    """Counts ``{multiplicity: number of families}`` of zero-joining connections."""
    if tol is None:
        tol = 1e-9 * R
    z = s.zeros()
    if len(z) != 2:
        raise ValueError(f"expected exactly two cone points, found {z}")
    z1, z2 = z
    connections = [sc for sc in enumerate_sc(s, R) if (sc.start, sc.end) == (z1, z2)]
    counts: dict[int, int] = {}
    for fam in group_families(connections, tol):
        counts[fam.multiplicity] = counts.get(fam.multiplicity, 0) + 1
    return counts


def count_report(s: FlatSurface, R: float, tol: float | None = None) -> dict:
    """JSON-ready report with family counts and empirical constants."""
    counts = family_counts(s, R, tol)
    norm = s.area / (math.pi * R * R)
    return {
        "R": R,
        "families": {str(k): counts.get(k, 0) for k in (1, 2, 3)},
        "estimates": {
            f"c{k}": counts.get(k, 0) * norm for k in (1, 2, 3)
        },
    }
