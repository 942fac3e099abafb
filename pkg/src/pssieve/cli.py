"""
Interface en ligne de commande de pssieve

Chaque sous-commande écrit un artefact déterministe
output_dir/<commande>-<empreinte>.<ext> et le recopie sur stdout.
"""

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from pssieve import __version__
from pssieve.arith_core import EULER_GAMMA, heath_brown_lambda, lambda_of
from pssieve.config_manager import ConfigManager
from pssieve.exceptions import (
    CertificationError,
    ConfigError,
    ConsistencyError,
    DomainError,
    NumericError,
    ParameterError,
    ParseError,
    PsSieveError,
    ResourceLimitError,
)
from pssieve.exp_sums import (
    CALIBRATED_CONSTANTS,
    ExponentPair,
    TRIVIAL_PAIR,
    apply_process,
    apply_word,
    lattice_count_oracle,
    psi_truncation_check,
    trilinear_sum_check,
)
from pssieve.logger import get_logger, set_level
from pssieve.params import (
    TARGET_BRACKET,
    bf_degeneracy,
    bracket_report,
    check_admissible,
    exponent_budget_S0,
    exponent_budget_typeI,
    exponent_budget_typeII,
    integral_7fold,
    make_params,
)
from pssieve.partial_products import exhaustive_certify, window_inside_analytic
from pssieve.ps_counts import (
    card_A,
    count_A_d,
    count_P7,
    make_instance,
    remainder_R_frak,
    remainder_table,
    weighted_W_report,
)
from pssieve.sieve_functions import dde_residual, eval_F, eval_f

# Configuration du logger
logger = logging.getLogger("pssieve")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
SCHEMA_VERSION = 1
CSV_BANNER = f"# ps-sieve-lab v{__version__}, schema {SCHEMA_VERSION}"
ADMISSIBLE_GRID = (0.9891, 0.9999)

_USAGE_ERRORS = (ConfigError, DomainError, ParameterError, ParseError, ResourceLimitError)
_FAILURE_ERRORS = (ConsistencyError, CertificationError, NumericError)


@dataclass
class Table:
    """Résultat tabulaire, écrit en CSV ou en JSON"""

    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        out = dict(self.meta)
        out["columns"] = self.columns
        out["rows"] = self.rows
        return out


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"type non sérialisable: {type(value).__name__}")


def dump_json(payload):
    """JSON trié et indenté, sans horodatage"""
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def dump_csv(table):
    """CSV précédé de la bannière versionnée"""
    buffer = io.StringIO()
    buffer.write(CSV_BANNER + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow(["" if v is None else v for v in row])
    return buffer.getvalue()


def run_id(command, arguments, cfg):
    """
    Empreinte sha1 (10 caractères) de la commande et de la configuration effective

    Args:
        command (str): Sous-commande
        arguments (dict): Arguments propres à la sous-commande
        cfg (RunConfig): Configuration effective

    Returns:
        str: Identifiant de l'exécution
    """
    settings = asdict(cfg)
    settings.pop("output_dir", None)
    key = dump_json({"command": command, "arguments": arguments, "config": settings})
    return hashlib.sha1(key.encode("utf-8")).hexdigest()[:10]


def write_artifact(command, arguments, cfg, payload):
    """
    Écrit l'artefact et retourne son chemin et son contenu

    Args:
        command (str): Sous-commande
        arguments (dict): Arguments propres à la sous-commande
        cfg (RunConfig): Configuration effective
        payload (dict|Table): Résultat

    Returns:
        tuple: (chemin, texte écrit)
    """
    if isinstance(payload, Table) and cfg.format == "csv":
        text, ext = dump_csv(payload), "csv"
    else:
        body = payload.to_dict() if isinstance(payload, Table) else payload
        text, ext = dump_json(body), "json"
    out_dir = Path(cfg.output_dir).expanduser()
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{command}-{run_id(command, arguments, cfg)}.{ext}"
    path.write_text(text, encoding="utf-8")
    logger.info(f"Artefact écrit: {path}")
    return path, text


def _params(cfg, gamma, strict_weight=True):
    return make_params(gamma, cfg.eta, cfg.epsilon, strict_weight=strict_weight)


def _gauss_options(cfg):
    return {"start_nodes": cfg.gl_start_nodes, "max_nodes": cfg.gl_max_nodes}


def _mc_cross_check(p, report, samples, seed):
    mc = integral_7fold(p, method="monte_carlo", samples=samples, seed=seed)
    gap = abs(mc.value - report["I7"])
    return {
        "I7": mc.value,
        "stderr": mc.error,
        "samples": mc.samples,
        "seed": mc.seed,
        "gap": gap,
        "within_3se": gap <= 3.0 * mc.error,
    }


def cmd_bracket(args, cfg):
    """Crochet final B(γ) pour chaque γ demandé"""
    results = []
    passed = True
    for gamma in cfg.gamma_grid:
        p = _params(cfg, gamma)
        if args.method == "monte_carlo":
            report = bracket_report(p, method="monte_carlo", samples=args.samples or cfg.mc_samples,
                                    seed=cfg.seed)
        else:
            report = bracket_report(p, **_gauss_options(cfg))
            if args.cross_check:
                report["monte_carlo"] = _mc_cross_check(
                    p, report, args.samples or cfg.mc_samples, cfg.seed)
                passed &= report["monte_carlo"]["within_3se"]
        # la cible implique B > 0
        passed &= report["meets_target"]
        if not report["meets_target"]:
            logger.warning(f"γ={gamma}: B={report['bracket']:.8g} sous la cible {TARGET_BRACKET}")
        results.append(report)
    return {"results": results, "target": TARGET_BRACKET, "eq": "level-def"}, passed


def _admissible_grid(count):
    lo, hi = ADMISSIBLE_GRID
    return [float(v) for v in np.linspace(lo, hi, count)]


def cmd_admissible(args, cfg):
    """Contraintes d'admissibilité et budgets d'exposants"""
    gammas = _admissible_grid(args.grid) if args.grid and not args.gamma else cfg.gamma_grid
    results = []
    passed = True
    for gamma in gammas:
        p = _params(cfg, gamma)
        constraints = check_admissible(p)
        budgets = [exponent_budget_typeII(p), exponent_budget_typeI(p), exponent_budget_S0(p)]
        slack = constraints.get("1 - a < c/2").slack
        ok = constraints.passed and all(b.passed for b in budgets)
        passed &= ok
        results.append({
            "gamma": gamma,
            "passed": ok,
            "constraints": constraints.to_dict(),
            "budgets": [b.to_dict() for b in budgets],
            "one_minus_a_slack_over_eta": slack / p.eta,
            "degeneracy_eta0": bf_degeneracy(gamma),
        })
    return {"results": results, "eq": "exponen-fenjie"}, passed


def cmd_sievefn(args, cfg):
    """Table de F(s), f(s) et résidus du système à retard"""
    if args.grid:
        start, stop, count = args.grid
        points = [float(v) for v in np.linspace(start, stop, int(count))]
    else:
        points = args.s or [2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0]
    columns = ["s", "F", "f"]
    if args.residual_h:
        columns += ["residual_sF", "residual_sf"]
    rows = []
    passed = True
    for s in points:
        row = [s, eval_F(s), eval_f(s)]
        if args.residual_h:
            res = dde_residual(s, args.residual_h)
            passed &= max(res) < 1e-5
            row += list(res)
        rows.append(row)
    return Table(columns, rows, {"C0": EULER_GAMMA, "eq": "diff-eq"}), passed


def cmd_pair(args, cfg):
    """Couple d'exposants obtenu par un mot de processus"""
    start = ExponentPair.parse(args.start) if args.start else TRIVIAL_PAIR
    pair = apply_word(args.word, start)
    payload = {"word": args.word, "start": start.to_dict(), "eq": "expo-pair-gernal"}
    payload.update(pair.to_dict())
    return payload, True


def cmd_lemma24(args, cfg):
    """Comptage des quasi-coïncidences h·ℓ^{1/γ}/d"""
    res = lattice_count_oracle(args.J, args.L, args.D, args.delta, args.gamma,
                               strict=not args.non_strict)
    payload = res.to_dict()
    payload["constant"] = CALIBRATED_CONSTANTS["C24"]
    return payload, res.ratio <= CALIBRATED_CONSTANTS["C24"]


def cmd_lemma25(args, cfg):
    """Somme trilinéaire et sa borne"""
    res = trilinear_sum_check(args.H, args.N, args.M, args.X, args.alpha, args.beta,
                              args.gamma_e)
    payload = res.to_dict()
    payload["constant"] = CALIBRATED_CONSTANTS["C25"]
    return payload, res.ratio <= CALIBRATED_CONSTANTS["C25"]


def _psi_samples(count, scale, seed):
    return np.random.default_rng(seed).random(count) * scale


def cmd_psi(args, cfg):
    """Erreur de troncature de la série de Fourier de ψ"""
    samples = _psi_samples(args.samples, args.scale, cfg.seed)
    results = [psi_truncation_check(samples, H).to_dict() for H in args.H]
    worst = max(r["value"] for r in results)
    payload = {"results": results, "seed": cfg.seed, "constant": CALIBRATED_CONSTANTS["C22"],
               "eq": "psi-expansion"}
    return payload, worst <= CALIBRATED_CONSTANTS["C22"]


def _instance(cfg, x, gamma):
    return make_instance(x, gamma, cfg.eta, cfg.epsilon, cfg.segment_size, cfg.max_segments)


def cmd_count(args, cfg):
    """Décompte des presque-premiers [p^{1/γ}] à petite échelle"""
    rows = []
    weighted = []
    for x in args.x or cfg.x_scales:
        inst = _instance(cfg, x, args.gamma)
        res = count_P7(inst, omega_max=args.omega_max, sifted=args.sifted)
        sizes = card_A(inst)
        rows.append(res.to_row() + [sizes["set"]])
        if args.weighted:
            report = weighted_W_report(inst).to_dict()
            report["x"] = inst.x
            weighted.append(report)
    meta = {"omega_max": args.omega_max, "sifted": args.sifted, "eq": "omega(a)<7-lower"}
    if weighted:
        meta["weighted"] = weighted
    table = Table(["gamma", "x", "count", "benchmark", "ratio", "distinct_a"], rows, meta)
    return table, all(row[2] > 0 for row in rows)


def cmd_remainders(args, cfg):
    """Restes R_d (ou ℛ_d sur ℬ) pour d ≤ x^ξ"""
    inst = _instance(cfg, args.x, args.gamma)
    if args.frak:
        d_max = min(args.d_max or inst.d_max, inst.d_max)
        records = [remainder_R_frak(inst, d, n_factors=args.n_factors) for d in range(1, d_max + 1)]
        columns = ["d", "card_E_d", "X_over_d", "R_frak"]
        eq = "8-error-f-1"
    else:
        records = remainder_table(inst, args.d_max)
        columns = ["d", "card_A_d", "main_term", "R_d"]
        eq = "A_d-asymp"
    rows = [r.to_row() for r in records]
    sum_abs = math.fsum(abs(row[3]) for row in rows)
    meta = {"x": inst.x, "gamma": inst.gamma, "d_max": inst.d_max, "sum_abs": sum_abs, "eq": eq}
    return Table(columns, rows, meta), True


def cmd_certify(args, cfg):
    """Certificat des produits partiels et position de la fenêtre"""
    step = args.step or cfg.certify_step
    eta_s = args.eta_s if args.eta_s is not None else cfg.certify_eta_s
    report = exhaustive_certify(step, eta_s, workers=cfg.worker_count, raise_on_failure=False)
    slacks = [window_inside_analytic(_params(cfg, g)).to_dict() for g in args.gamma or [0.989]]
    payload = report.to_dict()
    payload["slacks"] = slacks
    if not report.passed:
        logger.error(f"{report.counterexample_count} contre-exemple(s) au pas {step}")
    return payload, report.passed


def _criterion(name, passed, **details):
    details["passed"] = bool(passed)
    logger.info(f"Critère {name}: {'OK' if passed else 'ÉCHEC'}")
    return name, details


def _reproduce_bracket(cfg, quick):
    out = []
    ok = True
    samples = 10**5 if quick else cfg.mc_samples
    for gamma in cfg.gamma_grid:
        p = _params(cfg, gamma)
        report = bracket_report(p, **_gauss_options(cfg))
        mc = _mc_cross_check(p, report, samples, cfg.seed)
        converged = report["I7_error"] < 1e-7
        ok &= report["meets_target"] and converged and mc["within_3se"]
        out.append({"gamma": gamma, "bracket": report["bracket"],
                    "meets_target": report["meets_target"], "I7_error": report["I7_error"],
                    "monte_carlo": mc})
    return _criterion("final_constant", ok, results=out)


def _reproduce_pair(cfg):
    target = apply_word("BA3B")
    exact = (target.kappa, target.ell) == (Fraction(11, 30), Fraction(8, 15))
    rng = np.random.default_rng(cfg.seed)
    involution = True
    for _ in range(100):
        den = int(rng.integers(2, 1000))
        k = Fraction(int(rng.integers(0, den // 2 + 1)), den)
        l = Fraction(int(rng.integers((den + 1) // 2, den + 1)), den)
        pair = ExponentPair(k, l)
        involution &= apply_process(apply_process(pair, "B"), "B") == pair
    return _criterion("exponent_pair", exact and involution, pair=target.to_dict(),
                      involution=involution)


def _reproduce_heath_brown(quick):
    stride = 7 if quick else 1
    worst = {}
    for X in (1000, 300):
        errors = [abs(heath_brown_lambda(n, X) - lambda_of(n))
                  for n in range(X // 2 + 1, X + 1, stride)]
        worst[str(X)] = max(errors)
    return _criterion("heath_brown", max(worst.values()) < 1e-9, max_error=worst)


def _reproduce_sieve():
    grid = np.linspace(2.05, 3.95, 200)
    worst = max(max(dde_residual(float(s), 1e-4)) for s in grid)
    f2 = eval_f(2.0)
    F2 = abs(eval_F(2.0) - math.exp(EULER_GAMMA))
    return _criterion("sieve_dde", worst < 1e-5 and f2 == 0.0 and F2 < 1e-12,
                      max_residual=worst, f_at_2=f2, F_at_2_error=F2)


def _reproduce_admissible(cfg, quick):
    gammas = _admissible_grid(10 if quick else 100)
    ok = True
    slack_ratios = []
    degeneracy = 0.0
    for gamma in gammas:
        p = _params(cfg, gamma)
        report = check_admissible(p)
        ratio = report.get("1 - a < c/2").slack / p.eta
        slack_ratios.append(ratio)
        degeneracy = max(degeneracy, bf_degeneracy(gamma))
        ok &= report.passed and 0.1 <= ratio <= 10.0
    ok &= degeneracy < 1e-12
    budgets_ok = all(
        budget(_params(cfg, g)).passed
        for g in gammas
        for budget in (exponent_budget_typeII, exponent_budget_typeI, exponent_budget_S0)
    )
    return (
        _criterion("admissibility", ok, points=len(gammas),
                   slack_over_eta=[min(slack_ratios), max(slack_ratios)], degeneracy=degeneracy),
        _criterion("exponent_budgets", budgets_ok, points=len(gammas)),
    )


def _reproduce_certificate(cfg, quick):
    step = 1e-2 if quick else cfg.certify_step
    report = exhaustive_certify(step, cfg.certify_eta_s, workers=cfg.worker_count,
                                raise_on_failure=False)
    slacks = [window_inside_analytic(_params(cfg, g)) for g in np.linspace(0.9891, 0.999, 10)]
    ok = report.passed and all(s.passed for s in slacks)
    if not quick:
        ok &= report.points_checked >= 10**5
    return _criterion("partial_products", ok, step=step, points_checked=report.points_checked,
                      counterexamples=report.counterexample_count, min_margin=report.min_margin,
                      min_slack=min(min(s.lower_slack, s.upper_slack) for s in slacks))


def _reproduce_counts(cfg, quick):
    x = 10**5 if quick else 10**6
    inst = _instance(cfg, x, 0.99)
    records = remainder_table(inst)
    r1_zero = count_A_d(inst, 1).R_d == 0
    res = count_P7(inst)
    big_x = 10**6 if quick else 10**7
    frak_inst = _instance(cfg, big_x, 0.99)
    frak = [remainder_R_frak(frak_inst, d, n_factors=3) for d in range(1, frak_inst.d_max + 1)]
    ok = r1_zero and res.count > 0 and res.count >= 0.5 * res.benchmark
    return _criterion("counting", ok, x=x, moduli=len(records), count_P7=res.count,
                      benchmark=res.benchmark, frak_moduli=len(frak), frak_x=big_x)


def _reproduce_lemmas(cfg):
    lattice = [lattice_count_oracle(8, 8, 8, delta, 0.99).ratio for delta in (1e-6, 1e-4)]
    trilinear = trilinear_sum_check(16, 16, 64, 32.0, 1 / 0.99, 1.0, 1.0).ratio
    samples = _psi_samples(10**4, 1000.0, cfg.seed)
    psi_ratio = max(psi_truncation_check(samples, H).max_ratio for H in (10, 100, 1000))
    c = CALIBRATED_CONSTANTS
    ok = max(lattice) <= c["C24"] and trilinear <= c["C25"] and psi_ratio <= c["C22"]
    return _criterion("lemma_constants", ok, lattice_ratio=max(lattice),
                      trilinear_ratio=trilinear, psi_ratio=psi_ratio, constants=c)


def cmd_reproduce(args, cfg):
    """Exécute l'ensemble des critères de recette"""
    quick = args.quick
    criteria = [
        _reproduce_pair(cfg),
        _reproduce_heath_brown(quick),
        _reproduce_sieve(),
        *_reproduce_admissible(cfg, quick),
        _reproduce_certificate(cfg, quick),
        _reproduce_counts(cfg, quick),
        _reproduce_lemmas(cfg),
        _reproduce_bracket(cfg, quick),
    ]
    results = dict(criteria)
    passed = all(c["passed"] for c in results.values())
    return {"quick": quick, "criteria": results, "passed": passed, "eq": "Theorem-1"}, passed


COMMANDS = {
    "bracket": cmd_bracket,
    "admissible": cmd_admissible,
    "sievefn": cmd_sievefn,
    "pair": cmd_pair,
    "lemma24": cmd_lemma24,
    "lemma25": cmd_lemma25,
    "psi": cmd_psi,
    "count": cmd_count,
    "remainders": cmd_remainders,
    "certify-partition": cmd_certify,
    "reproduce": cmd_reproduce,
}

_GLOBAL_DESTS = {"config", "output_dir", "format", "verbose", "quiet", "worker_count", "seed",
                 "exploration", "eta", "epsilon", "command"}


def build_parser():
    """
    Construit l'analyseur d'arguments

    Returns:
        argparse.ArgumentParser: Analyseur avec une sous-commande par opération
    """
    parser = argparse.ArgumentParser(
        prog="pssieve",
        description="Vérification numérique des presque-premiers [p^{1/γ}]",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="Fichier de configuration (sinon PS_SIEVE_CONFIG)")
    parser.add_argument("--output-dir", dest="output_dir", help="Répertoire des artefacts")
    parser.add_argument("--format", choices=["csv", "json"], help="Format des tables")
    parser.add_argument("--workers", type=int, dest="worker_count", help="Nombre de processus")
    parser.add_argument("--seed", type=lambda v: int(v, 0), help="Graine Monte Carlo")
    parser.add_argument("--eta", type=float, help="η (par défaut 1e-6)")
    parser.add_argument("--epsilon", type=float, help="ε (par défaut 1e-9)")
    parser.add_argument("--exploration", action="store_true", default=None,
                        help="Autoriser γ dans (99/140, 0.989)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Logs détaillés")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Avertissements seulement")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="Crochet final B(γ), code 1 si B < 0.00024867")
    p.add_argument("--gamma", type=float, nargs="+")
    p.add_argument("--method", choices=["tensor_gauss", "monte_carlo"], default="tensor_gauss")
    p.add_argument("--cross-check", action="store_true", help="Contrôle Monte Carlo de I7")
    p.add_argument("--samples", type=lambda v: int(float(v)))

    p = sub.add_parser("admissible", help="Contraintes et budgets d'exposants")
    p.add_argument("--gamma", type=float, nargs="+")
    p.add_argument("--grid", type=int, help="Nombre de points dans [0.9891, 0.9999]")

    p = sub.add_parser("sievefn", help="Fonctions F et f du crible linéaire")
    p.add_argument("--s", type=float, nargs="+")
    p.add_argument("--grid", type=float, nargs=3, metavar=("START", "STOP", "COUNT"))
    p.add_argument("--residual-h", type=float, dest="residual_h")

    p = sub.add_parser("pair", help="Couple d'exposants d'un mot A/B")
    p.add_argument("--word", required=True)
    p.add_argument("--start", help="Couple de départ, par exemple 0,1")

    p = sub.add_parser("lemma24", help="Comptage de quasi-coïncidences")
    p.add_argument("--J", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--non-strict", action="store_true", dest="non_strict")

    p = sub.add_parser("lemma25", help="Somme trilinéaire")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--X", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma-e", type=float, default=1.0, dest="gamma_e")

    p = sub.add_parser("psi", help="Troncature de la série de ψ")
    p.add_argument("--H", type=int, nargs="+", default=[10, 100, 1000])
    p.add_argument("--samples", type=lambda v: int(float(v)), default=10**4)
    p.add_argument("--scale", type=float, default=1000.0)

    p = sub.add_parser("count", help="Décompte de 𝒫₇ sur [p^{1/γ}]")
    p.add_argument("--x", type=lambda v: int(float(v)), nargs="+")
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--omega-max", type=int, default=7, dest="omega_max")
    p.add_argument("--sifted", action="store_true")
    p.add_argument("--weighted", action="store_true", help="Ajouter la somme pondérée W")

    p = sub.add_parser("remainders", help="Restes R_d ou ℛ_d")
    p.add_argument("--x", type=lambda v: int(float(v)), required=True)
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--d-max", type=int, dest="d_max")
    p.add_argument("--frak", action="store_true", help="ℛ_d sur l'ensemble ℬ")
    p.add_argument("--n-factors", type=int, default=8, dest="n_factors")

    p = sub.add_parser("certify-partition", help="Certificat des produits partiels")
    p.add_argument("--step", type=float)
    p.add_argument("--eta-s", type=float, dest="eta_s")
    p.add_argument("--gamma", type=float, nargs="+")

    p = sub.add_parser("reproduce", help="Critères de recette")
    p.add_argument("--quick", action="store_true", help="Échelles réduites")
    return parser


def run(argv):
    """
    Analyse argv, exécute la sous-commande et écrit l'artefact

    Args:
        argv (list): Arguments sans le nom du programme

    Returns:
        int: Code de sortie (0 succès, 1 échec d'un contrôle, 2 erreur d'usage)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    set_level(get_logger("pssieve", level), level)

    try:
        manager = ConfigManager(args.config)
        gamma_grid = args.gamma if args.command in ("bracket", "admissible") else None
        cfg = manager.run_config(
            gamma_grid=gamma_grid,
            output_dir=args.output_dir,
            format=args.format,
            worker_count=args.worker_count,
            seed=args.seed,
            eta=args.eta,
            epsilon=args.epsilon,
            exploration=args.exploration,
        )
        payload, passed = COMMANDS[args.command](args, cfg)
        arguments = {k: v for k, v in vars(args).items() if k not in _GLOBAL_DESTS}
        _, text = write_artifact(args.command, arguments, cfg, payload)
    except _USAGE_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except _FAILURE_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
    except PsSieveError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE

    sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAILURE


def main(argv=None):
    """Point d'entrée du script pssieve"""
    return run(sys.argv[1:] if argv is None else argv)
