"""Command-line front end.

Every run is described by a RunConfig and produces a Report whose JSON
rendering is byte-identical for identical configurations; parallelism
(--jobs) is an execution knob and never appears in the output.  Exit
codes: 0 success, 2 configuration problems, 3 mathematical-input
problems, 4 violated internal invariants (including selftest failures).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .central_charge import (
    BWParams,
    closed_form_Z,
    eval_Z,
    in_P_plus,
    omega_from_bw,
    spherical_wall_hits,
    support_constant,
    wall_scan_alpha,
)
from .spherical_enum import (
    SearchBox,
    companion_classes,
    delta_mu_plus,
    enumerate_spherical,
    good_basis,
)
from .errors import ConfigError, InternalInvariantError, K3LaxError
from .mukai_lattice import (
    MukaiVector,
    NSLattice,
    SphericalNormBasis,
    is_spherical,
    mukai_pairing,
    reflect,
    tensor_line_bundle,
)
from .lax_boundary import (
    build_lax_point,
    family_masses,
    irrationality_certificate,
    separate_from_hom_functionals,
    verify_certificate,
)
from .mass_reconstruction import MassOracle, reconstruct
from .reports import (
    float_str,
    fraction_str,
    mukai_json,
    omega_json,
    quad_json,
    render_csv,
    render_json,
    scalar_json,
)
from .exact_scalars import QuadComplex, QuadNumber, try_sqrt

_CSV_COMMANDS = ("enum", "lax")
_COMMANDS = (
    "pair",
    "enum",
    "basis",
    "chamber",
    "walls",
    "reconstruct",
    "lax",
    "separate",
    "selftest",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    lattice_path: str | None = None
    box: tuple[int, int, int] = (8, 8, 40)
    mode: str = "exact"
    seed: int = 0
    output: str = "json"
    tolerance: float = 1e-9
    jobs: int = 1
    mu: Fraction | None = None
    u: tuple[int, ...] | None = None
    v: tuple[int, ...] | None = None
    b_field: tuple[Fraction, ...] | None = None
    alpha: Fraction | None = None
    delta: tuple[int, ...] | None = None
    alpha_min: Fraction | None = None
    l_min: int = -5
    l_max: int = 5
    mass_table: str | None = None
    search_limit: int = 10**6


@dataclass(frozen=True)
class Report:
    command: str
    inputs: dict
    results: dict
    provenance: dict

    def payload(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "provenance": self.provenance,
        }


def load_lattice(path: str) -> NSLattice:
    """Read a lattice description file; parse errors carry the position."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read lattice file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        )
    return NSLattice.from_dict(data)


def _parse_fraction(text: str, label: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{label} must be a fraction like 3/2, got {text!r}")


def _parse_ints(text: str, label: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{label} must be comma-separated integers, got {text!r}")


def _parse_box(text: str) -> tuple[int, int, int]:
    parts = _parse_ints(text, "--box")
    if len(parts) != 3:
        raise ConfigError(f"--box needs three bounds R,D,S, got {text!r}")
    return parts  # type: ignore[return-value]


def _vector(coords: tuple[int, ...], lat: NSLattice, label: str) -> MukaiVector:
    if len(coords) != lat.rank + 2:
        raise ConfigError(
            f"{label} needs {lat.rank + 2} coordinates r,D...,s for rank {lat.rank}"
        )
    return MukaiVector(coords[0], coords[1:-1], coords[-1])


def _b_field(cfg: RunConfig, lat: NSLattice) -> tuple[Fraction, ...]:
    if cfg.b_field is None:
        raise ConfigError("--B is required here")
    if len(cfg.b_field) != lat.rank:
        raise ConfigError(
            f"--B needs {lat.rank} entries for rank {lat.rank}, got {len(cfg.b_field)}"
        )
    return cfg.b_field


def _load_mass_table(path: str, mode: str) -> dict[MukaiVector, object]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read mass table {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict) or "masses" not in data:
        raise ConfigError("mass table must be an object with a 'masses' list")
    table: dict[MukaiVector, object] = {}
    for entry in data["masses"]:
        try:
            key = MukaiVector(entry["r"], tuple(entry["D"]), entry["s"])
            raw = entry["mass_sq"]
        except (KeyError, TypeError):
            raise ConfigError(f"malformed mass entry {entry!r}")
        if mode == "exact":
            if isinstance(raw, float):
                raise ConfigError(
                    "exact mode needs integer or fraction-string masses; "
                    "rerun with --mode float for IEEE input"
                )
            value = Fraction(raw) if isinstance(raw, str) else Fraction(int(raw))
        else:
            value = float(Fraction(raw)) if isinstance(raw, str) else float(raw)
        table[key] = value
    return table


def _default_lattices() -> list[NSLattice]:
    return [
        NSLattice([[2]], [1], name="rho1-d1"),
        NSLattice([[4]], [1], name="rho1-d2"),
        NSLattice([[2, 0], [0, -4]], [1, 0], name="rho2-d1"),
    ]


# ---------------------------------------------------------------- commands


def _cmd_pair(lat: NSLattice, cfg: RunConfig):
    if cfg.u is None or cfg.v is None:
        raise ConfigError("pair needs --u and --v")
    u = _vector(cfg.u, lat, "--u")
    v = _vector(cfg.v, lat, "--v")
    results = {
        "pairing": mukai_pairing(lat, u, v),
        "u_spherical": is_spherical(lat, u),
        "v_spherical": is_spherical(lat, v),
    }
    inputs = {"u": mukai_json(u), "v": mukai_json(v)}
    return inputs, results, None


def _cmd_enum(lat: NSLattice, cfg: RunConfig):
    box = SearchBox(*cfg.box)
    if cfg.mu is not None:
        classes, r0 = delta_mu_plus(lat, cfg.mu, box, jobs=cfg.jobs)
        results = {
            "classes": [mukai_json(c) for c in classes],
            "count": len(classes),
            "r0": r0,
        }
        inputs = {"mu": fraction_str(cfg.mu)}
    else:
        classes = enumerate_spherical(lat, box, jobs=cfg.jobs)
        results = {
            "classes": [mukai_json(c) for c in classes],
            "count": len(classes),
        }
        inputs = {"mu": None}
    header = ["r"] + [f"D{i}" for i in range(lat.rank)] + ["s"]
    rows = [[str(c) for c in cls.v.coords()] for cls in classes]
    return inputs, results, (header, rows)


def _cmd_basis(lat: NSLattice, cfg: RunConfig):
    box = SearchBox(*cfg.box)
    basis = good_basis(lat, box)
    companions = companion_classes(lat, basis)
    results = {
        "vectors": [mukai_json(c) for c in basis.vectors],
        "pair_matrix": [list(row) for row in basis.pair_matrix],
        "companions": [
            {"i": i, "j": j, "w": mukai_json(w)}
            for (i, j), w in sorted(companions.items())
        ],
    }
    return {}, results, None


def _cmd_chamber(lat: NSLattice, cfg: RunConfig):
    if cfg.b_field is None or cfg.alpha is None:
        raise ConfigError("chamber needs --B and --alpha")
    b = _b_field(cfg, lat)
    omega = omega_from_bw(lat, BWParams(b, cfg.alpha))
    box = SearchBox(*cfg.box)
    hits = spherical_wall_hits(
        lat, omega, box, mode=cfg.mode, tol=cfg.tolerance, jobs=cfg.jobs
    )
    results = {
        "in_p_plus": in_P_plus(lat, omega),
        "wall_hits": [mukai_json(c) for c in hits],
        "wall_hit_count": len(hits),
        "omega": omega_json(omega),
    }
    inputs = {
        "B": [fraction_str(c) for c in b],
        "alpha": fraction_str(cfg.alpha),
    }
    return inputs, results, None


def _walls_parameters(lat: NSLattice, cfg: RunConfig):
    if cfg.mu is not None:
        lp = build_lax_point(lat, cfg.mu, SearchBox(*cfg.box))
        return lp.b0, lp.delta0, lp.alpha0, {"mu": fraction_str(cfg.mu)}
    if cfg.b_field is None or cfg.delta is None or cfg.alpha_min is None:
        raise ConfigError("walls needs either --mu or all of --B, --delta, --alpha-min")
    b = _b_field(cfg, lat)
    delta = _vector(cfg.delta, lat, "--delta")
    inputs = {
        "B": [fraction_str(c) for c in b],
        "delta": mukai_json(delta),
        "alpha_min": fraction_str(cfg.alpha_min),
    }
    return b, delta, cfg.alpha_min, inputs


def _cmd_walls(lat: NSLattice, cfg: RunConfig):
    b, delta, alpha_min, inputs = _walls_parameters(lat, cfg)
    scan = wall_scan_alpha(lat, b, delta, alpha_min, SearchBox(*cfg.box))
    results = {
        "base": {
            "B": [fraction_str(c) for c in b],
            "delta": mukai_json(delta.v if hasattr(delta, "v") else delta),
            "alpha_min": scalar_json(alpha_min),
        },
        "hits": [
            {
                "alpha_sq": fraction_str(h.alpha_sq),
                "alpha": None if h.alpha is None else quad_json(h.alpha),
                "witnesses": [mukai_json(w) for w in h.witnesses],
            }
            for h in scan.hits
        ],
        "hit_count": len(scan.hits),
        "aligned": [mukai_json(w) for w in scan.aligned],
    }
    return inputs, results, None


def _cmd_reconstruct(lat: NSLattice, cfg: RunConfig):
    box = SearchBox(*cfg.box)
    basis = good_basis(lat, box)
    if cfg.mass_table is not None:
        oracle = MassOracle.from_table(_load_mass_table(cfg.mass_table, cfg.mode))
        inputs = {"mass_table": cfg.mass_table}
    elif cfg.b_field is not None and cfg.alpha is not None:
        b = _b_field(cfg, lat)
        omega = omega_from_bw(lat, BWParams(b, cfg.alpha))
        oracle = MassOracle.from_charge(lat, omega)
        inputs = {
            "B": [fraction_str(c) for c in b],
            "alpha": fraction_str(cfg.alpha),
        }
    else:
        raise ConfigError("reconstruct needs --mass-table or both --B and --alpha")
    charge = reconstruct(lat, basis, oracle, mode=cfg.mode, tol=None)
    results = {
        "coefficients": [
            {"a": scalar_json(a), "b": scalar_json(b)} for a, b in charge.coefficients
        ],
        "omega": omega_json(charge.omega),
        "residual": scalar_json(charge.residual),
        "branch": charge.branch,
    }
    return inputs, results, None


def _cmd_lax(lat: NSLattice, cfg: RunConfig):
    if cfg.mu is None:
        raise ConfigError("lax needs --mu")
    if cfg.l_min > cfg.l_max:
        raise ConfigError("--l-min must not exceed --l-max")
    lp = build_lax_point(lat, cfg.mu, SearchBox(*cfg.box))
    family = family_masses(lp, cfg.l_min, cfg.l_max)
    results = {
        "delta0": mukai_json(lp.delta0),
        "b0": [fraction_str(c) for c in lp.b0],
        "alpha0": quad_json(lp.alpha0),
        "r0": lp.r0,
        "d": lp.d,
        "family": [
            {"l": ell, "mass_sq": fraction_str(m.a)} for ell, m in family
        ],
    }
    inputs = {
        "mu": fraction_str(cfg.mu),
        "l_min": cfg.l_min,
        "l_max": cfg.l_max,
    }
    header = ["l", "mass_sq"]
    rows = [[str(ell), fraction_str(m.a)] for ell, m in family]
    return inputs, results, (header, rows)


def _cmd_separate(lat: NSLattice, cfg: RunConfig):
    if cfg.mu is None:
        raise ConfigError("separate needs --mu")
    lp = build_lax_point(lat, cfg.mu, SearchBox(*cfg.box))
    report = separate_from_hom_functionals(lp, search_limit=cfg.search_limit)
    cert = report.certificate
    results = {
        "delta0": mukai_json(lp.delta0),
        "a": report.a,
        "certificate": {
            "a": cert.a,
            "p": cert.p,
            "l0": cert.l0,
            "l1": cert.l1,
            "val_l0": cert.val_l0,
            "val_l1": cert.val_l1,
        },
        "mass_sq_l0": report.mass_sq_l0,
        "mass_sq_l1": report.mass_sq_l1,
        "ratio_valuation": report.ratio_valuation,
        "chi_l0": report.chi_l0,
        "chi_l1": report.chi_l1,
        "hom_ratio_note": report.hom_ratio_note,
        "conclusion": report.conclusion,
    }
    inputs = {"mu": fraction_str(cfg.mu), "search_limit": cfg.search_limit}
    return inputs, results, None


# ---------------------------------------------------------------- selftest


def _selftest_checks(seed: int):
    rng = random.Random(seed)
    lats = _default_lattices()

    def random_vector(lat: NSLattice, bound: int = 12) -> MukaiVector:
        return MukaiVector(
            rng.randint(-bound, bound),
            tuple(rng.randint(-bound, bound) for _ in range(lat.rank)),
            rng.randint(-bound, bound),
        )

    def check_scalar_field_laws():
        for _ in range(150):
            xs = [
                QuadNumber(
                    Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                    Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                    2,
                )
                for _ in range(3)
            ]
            x, y, z = xs
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            if not x.is_zero:
                assert x * (1 / x) == 1
            root = try_sqrt(x * x)
            assert root is not None and root * root == x * x

    def check_pairing_bilinear():
        for lat in lats:
            for _ in range(60):
                u, v, w = (random_vector(lat) for _ in range(3))
                assert mukai_pairing(lat, u, v) == mukai_pairing(lat, v, u)
                assert mukai_pairing(lat, u + v, w) == mukai_pairing(
                    lat, u, w
                ) + mukai_pairing(lat, v, w)

    def check_reflection():
        for lat in lats:
            deltas = enumerate_spherical(lat, SearchBox(2, 2, 6))
            if not deltas:
                continue
            for _ in range(40):
                delta = deltas[rng.randrange(len(deltas))]
                u, v = random_vector(lat), random_vector(lat)
                once = reflect(lat, delta, v)
                assert reflect(lat, delta, once) == v
                assert mukai_pairing(
                    lat, reflect(lat, delta, u), reflect(lat, delta, v)
                ) == mukai_pairing(lat, u, v)

    def check_tensor_action():
        for lat in lats:
            for _ in range(40):
                v = random_vector(lat)
                w = random_vector(lat)
                k1, k2 = rng.randint(-4, 4), rng.randint(-4, 4)
                step = tensor_line_bundle(lat, k2, tensor_line_bundle(lat, k1, v))
                assert step == tensor_line_bundle(lat, k1 + k2, v)
                assert mukai_pairing(
                    lat,
                    tensor_line_bundle(lat, k1, v),
                    tensor_line_bundle(lat, k1, w),
                ) == mukai_pairing(lat, v, w)

    def check_enumeration_oracle():
        box = SearchBox(2, 2, 6)
        for lat in lats:
            found = {cls.v for cls in enumerate_spherical(lat, box)}
            brute = set()
            span = range(-box.d_bound, box.d_bound + 1)
            import itertools as it

            for r in range(-box.r_max, box.r_max + 1):
                for D in it.product(span, repeat=lat.rank):
                    for s in range(-box.s_bound, box.s_bound + 1):
                        v = MukaiVector(r, D, s)
                        if mukai_pairing(lat, v, v) == -2:
                            brute.add(v)
            assert found == brute

    def check_good_basis():
        for lat in lats:
            basis = good_basis(lat, SearchBox(8, 8, 40))
            basis.validate(lat)
            companions = companion_classes(lat, basis)
            assert all(
                is_spherical(lat, w) for w in companions.values()
            )

    def check_charge_forms_agree():
        for lat in lats:
            for _ in range(30):
                b = tuple(
                    Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                    for _ in range(lat.rank)
                )
                alpha = Fraction(rng.randint(1, 8), rng.randint(1, 4))
                omega = omega_from_bw(lat, BWParams(b, alpha))
                v = random_vector(lat)
                assert eval_Z(lat, omega, v) == closed_form_Z(lat, b, alpha, v)
                assert in_P_plus(lat, omega)
                assert not in_P_plus(lat, omega.conjugate())

    def check_lax_discreteness():
        for lat in lats:
            lp = build_lax_point(lat, Fraction(0), SearchBox(4, 4, 12))
            from .lax_boundary import z_alpha0 as z0

            assert z0(lp, lp.delta0).is_zero
            for _ in range(40):
                z0(lp, random_vector(lat))
            family_masses(lp, -6, 6)

    def check_certificates():
        for a in range(1, 13):
            verify_certificate(irrationality_certificate(a))

    def check_reconstruction_roundtrip():
        for lat in lats:
            basis = good_basis(lat, SearchBox(8, 8, 40))
            b = tuple(
                Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                for _ in range(lat.rank)
            )
            alpha = Fraction(rng.randint(1, 6), rng.randint(1, 3))
            hidden = omega_from_bw(lat, BWParams(b, alpha))
            oracle = MassOracle.from_charge(lat, hidden)
            charge = reconstruct(lat, basis, oracle, mode="exact")
            assert charge.residual == 0
            gauge = eval_Z(lat, hidden, basis.vectors[0]).norm_square()
            for cls, (a_c, b_c) in zip(basis.vectors, charge.coefficients):
                recovered = eval_Z(lat, charge.omega, cls)
                assert recovered.norm_square() == eval_Z(
                    lat, hidden, cls
                ).norm_square() / gauge
                assert recovered == QuadComplex(a_c, b_c)

    def check_wall_scan_equation():
        lat = lats[0]
        lp = build_lax_point(lat, Fraction(0), SearchBox(4, 4, 12))
        scan = wall_scan_alpha(lat, lp.b0, lp.delta0, lp.alpha0, SearchBox(4, 4, 12))
        d = lat.degree
        for hit in scan.hits:
            for w in hit.witnesses:
                i_w = Fraction(lat.dot_ample(w.D)) - w.r * Fraction(lat.dot_ample(lp.b0))
                c_w = (
                    Fraction(lat.dot(lp.b0, w.D))
                    - w.s
                    - Fraction(w.r) * Fraction(lat.dot(lp.b0, lp.b0)) / 2
                )
                dv = lp.delta0.v
                i_d = Fraction(lat.dot_ample(dv.D)) - dv.r * Fraction(lat.dot_ample(lp.b0))
                c_d = (
                    Fraction(lat.dot(lp.b0, dv.D))
                    - dv.s
                    - Fraction(dv.r) * Fraction(lat.dot(lp.b0, lp.b0)) / 2
                )
                lhs = hit.alpha_sq * d * (i_w * dv.r - i_d * w.r) + (
                    i_w * c_d - i_d * c_w
                )
                assert lhs == 0

    def check_support_monotone():
        lat = lats[0]
        lp = build_lax_point(lat, Fraction(0), SearchBox(4, 4, 12))
        basis = SphericalNormBasis.build(lat, lp.delta0)
        omega = omega_from_bw(lat, BWParams(lp.b0, lp.alpha0))
        previous = None
        for bound in ((2, 2, 6), (3, 3, 9), (4, 4, 12)):
            current = support_constant(lat, basis, omega, SearchBox(*bound)).ratio_sq
            if previous is not None:
                assert current >= previous
            previous = current

    return [
        ("scalar field laws", check_scalar_field_laws),
        ("pairing symmetric and bilinear", check_pairing_bilinear),
        ("reflections are involutive isometries", check_reflection),
        ("twists form an isometric action", check_tensor_action),
        ("enumeration matches brute force", check_enumeration_oracle),
        ("good bases validate", check_good_basis),
        ("charge forms agree and orient", check_charge_forms_agree),
        ("boundary values are discrete", check_lax_discreteness),
        ("certificates verify", check_certificates),
        ("mass reconstruction round-trips", check_reconstruction_roundtrip),
        ("wall roots solve the alignment equation", check_wall_scan_equation),
        ("support bound grows with the box", check_support_monotone),
    ]


def _cmd_selftest(cfg: RunConfig):
    checks = []
    failed = 0
    for name, fn in _selftest_checks(cfg.seed):
        try:
            fn()
            checks.append({"name": name, "passed": True})
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            failed += 1
            checks.append(
                {
                    "name": name,
                    "passed": False,
                    "details": f"{type(exc).__name__}: {exc}",
                }
            )
    results = {
        "checks": checks,
        "passed": len(checks) - failed,
        "failed": failed,
    }
    return {}, results, None


# ---------------------------------------------------------------- driver


def _execute(config: RunConfig):
    """Validate the configuration, run the command, return (Report, table).

    The table part is None unless the command produced a tabular slice
    for csv rendering.
    """
    if config.command not in _COMMANDS:
        raise ConfigError(f"unknown command {config.command!r}")
    if config.mode not in ("exact", "float"):
        raise ConfigError(f"--mode must be exact or float, got {config.mode!r}")
    if config.output not in ("json", "csv"):
        raise ConfigError(f"--out must be json or csv, got {config.output!r}")
    if config.output == "csv" and config.command not in _CSV_COMMANDS:
        raise ConfigError(
            f"csv output covers tabular commands {_CSV_COMMANDS}; "
            f"{config.command} reports json only"
        )
    if config.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    if config.command == "selftest":
        inputs, results, table = _cmd_selftest(config)
        lattice_label = None
    else:
        if config.lattice_path is None:
            raise ConfigError(f"{config.command} needs --lattice")
        lat = load_lattice(config.lattice_path)
        handler = {
            "pair": _cmd_pair,
            "enum": _cmd_enum,
            "basis": _cmd_basis,
            "chamber": _cmd_chamber,
            "walls": _cmd_walls,
            "reconstruct": _cmd_reconstruct,
            "lax": _cmd_lax,
            "separate": _cmd_separate,
        }[config.command]
        inputs, results, table = handler(lat, config)
        lattice_label = config.lattice_path
    inputs = dict(inputs)
    inputs["lattice"] = lattice_label
    if config.mode == "float":
        inputs["tolerance"] = float_str(config.tolerance)
    report = Report(
        command=config.command,
        inputs=inputs,
        results=results,
        provenance={
            "box": list(config.box),
            "mode": config.mode,
            "seed": config.seed,
            "version": __version__,
        },
    )
    return report, table


def run(config: RunConfig) -> Report:
    """Execute one command and return its Report."""
    return _execute(config)[0]


def render_report(report: Report, config: RunConfig, table=None) -> str:
    if config.output == "json":
        return render_json(report.payload())
    if table is None:
        raise ConfigError(f"{config.command} produced no tabular slice for csv")
    header, rows = table
    return render_csv(header, rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3lax",
        description="Exact Mukai-lattice computations for stability charges "
        "on polarized K3 surfaces.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="path to a lattice JSON file")
    common.add_argument("--box", default="8,8,40", help="search bounds R,D,S")
    common.add_argument("--mode", default="exact", choices=("exact", "float"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="json", choices=("json", "csv"))
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("pair", parents=[common], help="Mukai pairing of two vectors")
    p.add_argument("--u", required=True, help="vector r,D...,s")
    p.add_argument("--v", required=True, help="vector r,D...,s")

    p = sub.add_parser("enum", parents=[common], help="spherical classes in a box")
    p.add_argument("--mu", help="restrict to positive-rank classes of this slope")

    sub.add_parser("basis", parents=[common], help="good spherical basis and companions")

    p = sub.add_parser("chamber", parents=[common], help="positivity and wall hits of a charge")
    p.add_argument("--B", required=True, help="B-field entries p/q,...")
    p.add_argument("--alpha", required=True, help="scale alpha as p/q")

    p = sub.add_parser("walls", parents=[common], help="alignment parameters above a base scale")
    p.add_argument("--mu", help="use the boundary data of this slope")
    p.add_argument("--B", help="B-field entries p/q,...")
    p.add_argument("--delta", help="reference spherical vector r,D...,s")
    p.add_argument("--alpha-min", dest="alpha_min", help="report roots above this")

    p = sub.add_parser("reconstruct", parents=[common], help="charge from squared masses")
    p.add_argument("--B", help="hidden charge B-field p/q,...")
    p.add_argument("--alpha", help="hidden charge alpha p/q")
    p.add_argument("--mass-table", dest="mass_table", help="JSON file of squared masses")

    p = sub.add_parser("lax", parents=[common], help="boundary charge and its mass family")
    p.add_argument("--mu", required=True, help="slope of the boundary class")
    p.add_argument("--l-min", dest="l_min", type=int, default=-5)
    p.add_argument("--l-max", dest="l_max", type=int, default=5)

    p = sub.add_parser("separate", parents=[common], help="irrationality separation report")
    p.add_argument("--mu", required=True, help="slope of the boundary class")
    p.add_argument("--search-limit", dest="search_limit", type=int, default=10**6)

    sub.add_parser("selftest", parents=[common], help="run the built-in invariant suite")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields: dict = {
        "command": args.command,
        "lattice_path": getattr(args, "lattice", None),
        "box": _parse_box(args.box),
        "mode": args.mode,
        "seed": args.seed,
        "output": args.out,
        "tolerance": args.tol,
        "jobs": args.jobs,
    }
    if getattr(args, "mu", None) is not None:
        fields["mu"] = _parse_fraction(args.mu, "--mu")
    if getattr(args, "u", None) is not None:
        fields["u"] = _parse_ints(args.u, "--u")
    if getattr(args, "v", None) is not None:
        fields["v"] = _parse_ints(args.v, "--v")
    if getattr(args, "B", None) is not None:
        fields["b_field"] = tuple(
            _parse_fraction(part, "--B entry") for part in args.B.split(",")
        )
    if getattr(args, "alpha", None) is not None:
        fields["alpha"] = _parse_fraction(args.alpha, "--alpha")
    if getattr(args, "delta", None) is not None:
        fields["delta"] = _parse_ints(args.delta, "--delta")
    if getattr(args, "alpha_min", None) is not None:
        fields["alpha_min"] = _parse_fraction(args.alpha_min, "--alpha-min")
    for name in ("l_min", "l_max", "mass_table", "search_limit"):
        if getattr(args, name, None) is not None:
            fields[name] = getattr(args, name)
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        report, table = _execute(config)
        sys.stdout.write(render_report(report, config, table))
    except K3LaxError as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(render_json(payload))
        if isinstance(exc, ConfigError):
            return 2
        if isinstance(exc, InternalInvariantError):
            return 4
        return 3
    if config.command == "selftest" and report.results["failed"] > 0:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
