"""Three-stage construction of a vertex geodesic cover of BF(r) with
``ceil(2/3 * 2**r)`` diametrals, for ``r >= 5``.

Stages 1 and 2 place ``2**(r-2)`` diametrals each and leave four small
sets of boundary vertices uncovered (``A'``, ``B'``, ``C'``, ``D'``,
``2**(r-3)`` vertices each). Stage 3 covers those with
``ceil(2**(r-1) / 3)`` further paths by cycling through three equal blocks
of the recolored sets, then finishing the one or two leftover vertices of
each set.

All index arithmetic uses the 1-based names ``u_i`` / ``w_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .butterfly import ButterflyError, ButterflyGraph, Color, color, diametral, route
from .cover import Cover
from .graph import Path, coverage_report

MIN_R = 5


class ConstructionError(RuntimeError):
    """The construction disagreed with its own bookkeeping."""


def _require(bf: ButterflyGraph, relax: bool = False) -> None:
    lo = 4 if relax else MIN_R
    if bf.r < lo:
        raise ButterflyError(
            f"the three-stage construction needs r >= {lo} (got r = {bf.r}); "
            "use the exact solver for smaller butterflies"
        )


def stage1(bf: ButterflyGraph, *, relax: bool = False) -> list[Path]:
    """Diametrals centred on ``u_i`` for the first and last ``2**(r-3)`` rows.

    ``relax=True`` permits r = 4, where the formulas still make sense.
    """
    _require(bf, relax)
    r, q, h = bf.r, 1 << (bf.r - 3), 1 << (bf.r - 1)
    paths = [diametral(bf, bf.u(i), bf.w(i), bf.w(i + h)) for i in range(1, q + 1)]
    paths += [
        diametral(bf, bf.u(i), bf.w(i), bf.w(i - h))
        for i in range(1 << r, 7 * q, -1)
    ]
    return paths


def stage2(bf: ButterflyGraph, *, relax: bool = False) -> list[Path]:
    """Diametrals centred on ``w_i``, pairing ``u_i`` with a neighbouring index."""
    _require(bf, relax)
    q = 1 << (bf.r - 3)
    up = [q + 1 + 2 * k for k in range(q)]
    down = [7 * q - 2 * k for k in range(q)]
    paths = [diametral(bf, bf.w(i), bf.u(i), bf.u(i + 1)) for i in up]
    paths += [diametral(bf, bf.w(i), bf.u(i), bf.u(i - 1)) for i in down]
    return paths


def uncovered_formula(bf: ButterflyGraph) -> tuple[list[int], list[int], list[int], list[int]]:
    q, h = 1 << (bf.r - 3), 1 << (bf.r - 1)
    a = [bf.u(i) for i in range(3 * q + 1, h + 1)]
    b = [bf.u(i) for i in range(h + 1, 5 * q + 1)]
    c = [bf.w(q + 2 + 2 * k) for k in range(q)]
    d = [bf.w(5 * q + 1 + 2 * k) for k in range(q)]
    return a, b, c, d


def uncovered_after_12(
    bf: ButterflyGraph, *, relax: bool = False
) -> tuple[list[int], list[int], list[int], list[int]]:
    """The boundary vertices left uncovered by stages 1 and 2.

    Computed from the closed-form index ranges and cross-checked against
    the actual coverage of the stage-1/2 paths.
    """
    _require(bf, relax)
    a, b, c, d = uncovered_formula(bf)
    covered = {v for p in stage1(bf, relax=relax) + stage2(bf, relax=relax) for v in p}
    actual = sorted(v for v in bf.U + bf.W if v not in covered)
    if sorted(a + b + c + d) != actual:
        raise ConstructionError(
            f"uncovered boundary set mismatch for r = {bf.r}: "
            f"formula {sorted(a + b + c + d)} vs coverage {actual}"
        )
    return a, b, c, d


@dataclass
class StagePlan:
    r: int
    stage1: list[Path]
    stage2: list[Path]
    stage3: list[Path]
    uncovered: tuple[list[int], list[int], list[int], list[int]]
    case: int
    ell: int
    extra_path: Path | None = None  # the single non-diametral completion (case 1)
    groups: dict[str, list[int]] = field(default_factory=dict)

    @property
    def paths(self) -> list[Path]:
        return self.stage1 + self.stage2 + self.stage3


def _stage3(bf: ButterflyGraph, a, b, c, d) -> tuple[list[Path], int, int, Path | None, dict]:
    q = 1 << (bf.r - 3)
    ell = q // 3
    case = q - 3 * ell
    if case not in (1, 2):
        raise ConstructionError(f"2^(r-3) = {q} is divisible by 3")

    ab = sorted(a + b)
    ur = [v for v in ab if color(bf, v) is Color.RED]
    ub = [v for v in ab if color(bf, v) is Color.BLUE]
    wr, wb = sorted(c), sorted(d)
    for name, grp in (("U^r", ur), ("U^b", ub), ("W^r", wr), ("W^b", wb)):
        if len(grp) != q:
            raise ConstructionError(f"{name} has {len(grp)} vertices, expected {q}")

    # 1-based access into the renamed groups
    def R(i):
        return ur[i - 1]

    def Bu(i):
        return ub[i - 1]

    def WR(i):
        return wr[i - 1]

    def WB(i):
        return wb[i - 1]

    paths: list[Path] = []
    for i in range(1, ell + 1):
        paths.append(diametral(bf, R(i), WR(i), WB(i)))
    for i in range(1, ell + 1):
        paths.append(diametral(bf, WR(ell + i), R(ell + i), Bu(i)))
    for i in range(1, ell + 1):
        paths.append(diametral(bf, WB(2 * ell + i), Bu(2 * ell + i), R(2 * ell + i)))
    for i in range(1, ell + 1):
        paths.append(diametral(bf, Bu(ell + i), WB(ell + i), WR(2 * ell + i)))

    x = 3 * ell + 1
    paths.append(diametral(bf, R(x), WR(x), WB(x)))
    extra: Path | None = None
    if case == 1:
        extra = _cover_one(bf, Bu(x), R(x))
        paths.append(extra)
    else:
        y = x + 1
        paths.append(diametral(bf, Bu(x), WR(y), WB(y)))
        paths.append(diametral(bf, bf.id(bf.r, 0), R(y), Bu(y)))
    groups = {"U^r": ur, "U^b": ub, "W^r": wr, "W^b": wb}
    return paths, case, ell, extra, groups


def _cover_one(bf: ButterflyGraph, target: int, partner: int) -> Path:
    # Any geodesic through ``target`` will do; prefer a full diametral.
    if color(bf, target) is not color(bf, partner):
        return diametral(bf, bf.id(bf.r, 0), target, partner)
    return route(bf, target, bf.id(bf.r, bf.row(target)))


def stage3(bf: ButterflyGraph) -> list[Path]:
    return plan(bf).stage3


def plan(bf: ButterflyGraph) -> StagePlan:
    _require(bf)
    s1, s2 = stage1(bf), stage2(bf)
    a, b, c, d = uncovered_after_12(bf)
    s3, case, ell, extra, groups = _stage3(bf, a, b, c, d)
    return StagePlan(bf.r, s1, s2, s3, (a, b, c, d), case, ell, extra, groups)


def optimal_vertex_cover_size(r: int) -> int:
    return -(-(1 << (r + 1)) // 3)


def construct_cover(bf: ButterflyGraph, verify: bool = True) -> Cover:
    """Vertex geodesic cover of BF(r) of size ``ceil(2/3 * 2**r)``, r >= 5.

    With ``verify`` the full coverage report is computed and any gap or
    non-geodesic path raises ``ConstructionError``.
    """
    p = plan(bf)
    paths = p.paths
    if len(paths) != optimal_vertex_cover_size(bf.r):
        raise ConstructionError(f"built {len(paths)} paths for r = {bf.r}")
    if verify:
        rep = coverage_report(bf.graph, paths, "vertex")
        if not rep.valid:
            raise ConstructionError(
                f"cover of BF({bf.r}) invalid: missing {rep.missing[:10]}, "
                f"bad paths {rep.invalid_paths[:10]}"
            )
    return Cover(paths=paths, mode="vertex", r=bf.r)
