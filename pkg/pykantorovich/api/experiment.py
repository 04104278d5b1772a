import json
import math
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from pykantorovich.engine.certificate import CertificateBuilder
from pykantorovich.engine.data_encoder import DataEncoder
from pykantorovich.engine.errors import ConfigError, KantorovichError
from pykantorovich.engine.generating_function import GeneratingFunction
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const
from pykantorovich.engine.moment_lab import MomentLab
from pykantorovich.engine.operator import KantorovichOperator, OperatorConfig
from pykantorovich.engine.report_summarizer import ReportSummarizer
from pykantorovich.engine.scale_sequence import ScaleChecker, ScaleSequence
from pykantorovich.engine.smoothness import ModulusEstimator
from pykantorovich.engine.weighted_space import WeightedSpace
from pykantorovich.utils.function_utils import DEFAULT_SUITE, gen_function, gen_functions
from pykantorovich.utils.regression_utils import loglog_slope, slope_verdicts

ALL_THEOREMS = [Const.Theorem.T2, Const.Theorem.T3, Const.Theorem.T4, Const.Theorem.T5]

def setup_config(gf=None, scale=None, n_list=None, **overrides):
    data = {}
    if gf is not None: data["gf"] = { "coeffs": list(gf) }
    if scale is not None: data["scale"] = scale if isinstance(scale, dict) else scale.serialize()
    if n_list is not None: data["n_list"] = list(n_list)
    data.update(overrides)
    return ExperimentConfig.from_dict(data)

def run_eval(config, threads=1, verbose=0):
    config.validation()
    summarizer = ReportSummarizer(verbose)
    cells = [(f, cfg, x) for f in config.function_suite() for cfg in config.operator_configs()
             for x in config.x_points()]
    rows = _map_cells(_eval_cell, cells, threads)
    one = gen_function("one")
    worst = max(abs(KantorovichOperator.eval_L_star(cfg, one, x) - 1.0)
                for cfg in config.operator_configs() for x in config.x_points())
    checks = [("normalization", worst <= Const.Tolerance.NORMALIZATION + config.epsilon,
               "max |L*(1;x) - 1| = %s" % worst)]
    summarizer.report(summarizer.summarize_eval(rows))
    return ExperimentReport("eval", config, DataEncoder.EVAL_COLUMNS, rows, checks)

def run_convergence(config, threads=1, verbose=0):
    config.validation()
    summarizer = ReportSummarizer(verbose)
    cfgs = config.operator_configs()
    suite = config.function_suite()
    xs = config.x_points()
    sup_errors, argmaxes = OrderedDict(), OrderedDict()
    for cfg in cfgs:
        cells = [(f, cfg, x) for f in suite for x in xs]
        errors = _map_cells(_abs_error_cell, cells, threads)
        for i, f in enumerate(suite):
            chunk = errors[i * len(xs):(i + 1) * len(xs)]
            index = int(np.argmax(chunk))
            sup_errors.setdefault(f.label(), []).append(chunk[index])
            argmaxes.setdefault(f.label(), []).append(float(xs[index]))
        summarizer.report(summarizer.summarize_sweep_step("converge", cfg.n, len(suite)), level=2)
    ns = [cfg.n for cfg in cfgs]
    slopes = OrderedDict((label, loglog_slope(ns, errors)) for label, errors in sup_errors.items())
    rows = [DataEncoder.encode_convergence_row(label, cfg, error, argmax, slopes[label])
            for label in sup_errors
            for cfg, error, argmax in zip(cfgs, sup_errors[label], argmaxes[label])]
    checks = [("finite_errors", all(math.isfinite(e) and e >= 0 for es in sup_errors.values() for e in es),
               "every sup error is finite and >= 0")]
    summarizer.report(summarizer.summarize_convergence(dict(slopes)))
    report = ConvergenceReport(config, rows, checks, sup_errors, slopes)
    smooth = OrderedDict((f.label(), f.smooth) for f in suite)
    _attach_slope_verdicts(report, config, smooth, slopes)
    return report

def run_moment_audit(config, threads=1, verbose=0):
    config.validation()
    summarizer = ReportSummarizer(verbose)
    cells = [(cfg, x) for cfg in config.operator_configs() for x in config.x_points()]
    reports = _map_cells(_moment_cell, cells, threads)
    rows = [DataEncoder.encode_moment_report(report) for report in reports]
    closed_ok = all(report.closed_form_agrees() for report in reports)
    m0_ok = all(abs(report.raw[0] - 1.0) <= Const.Tolerance.NORMALIZATION for report in reports)
    checks = [
        ("closed_form_agreement", closed_ok, "oracle raw moments match the adopted closed forms to 1e-9"),
        ("m0_normalization", m0_ok, "oracle m0 = 1 within 1e-12")
    ]
    summarizer.report(summarizer.summarize_moments(rows, closed_ok))
    return ExperimentReport("moments", config, DataEncoder.MOMENT_COLUMNS, rows, checks)

def run_certificates(config, theorems=None, threads=1, verbose=0):
    config.validation()
    theorems = config.certificates["theorems"] if theorems is None else list(theorems)
    _check_theorems(theorems, "theorems")
    summarizer = ReportSummarizer(verbose)
    cells, skipped = _certificate_cells(config, theorems)
    certs = _map_cells(_certificate_cell, cells, threads)
    rows = [DataEncoder.encode_certificate(cert) for cert in certs]
    failures = _certificate_failures(certs)
    flags = DataEncoder.encode_theorem_flags(certs)
    summarizer.report(summarizer.summarize_certificates(flags))
    report = ExperimentReport("certify", config, DataEncoder.CERTIFICATE_COLUMNS, rows, [], failures)
    report.metadata["theorems"] = theorems
    report.metadata["theorem_flags"] = flags
    report.metadata["skipped"] = skipped
    report.metadata["t4_summary"] = _t4_summaries(certs)
    return report

def run_weighted(config, threads=1, verbose=0):
    config.validation()
    summarizer = ReportSummarizer(verbose)
    cfgs = config.operator_configs()
    X_max, grid_n = config.weighted["X_max"], config.weighted["grid_n"]
    members = [f for f in config.function_suite() if WeightedSpace.in_c_rho_k(f)]
    skipped = [f.label() for f in config.function_suite() if not WeightedSpace.in_c_rho_k(f)]
    cells = [(f, i == 0) for i, f in enumerate(members)]
    experiment = lambda cell: WeightedSpace.weighted_convergence(cfgs, cell[0], X_max, grid_n, include_basis=cell[1])
    experiments = _map_cells(experiment, cells, threads)
    rho_image = WeightedSpace.rho_image_check(cfgs, X_max, grid_n)
    rows, slopes = [], OrderedDict()
    for result in experiments:
        rows += [DataEncoder.encode_weighted_row(row) for row in result["rows"]]
        for label, slope in result["slopes"].items():
            slopes.setdefault(label, slope)
    rows = _dedupe_rows(rows)
    e0 = [row["weighted_error"] for row in rows if row["label"] == "e0"]
    tol = Const.Tolerance.NORMALIZATION + config.epsilon
    checks = [
        ("e0_exact", all(e <= tol for e in e0), "||L* e0 - e0||_rho <= %s" % tol),
        ("rho_image_bounded", rho_image["bounded"], "||L*(rho)||_rho >= 1 and eventually nonincreasing")
    ]
    summarizer.report(summarizer.summarize_weighted(rho_image, dict(slopes)))
    report = ExperimentReport("weighted", config, DataEncoder.WEIGHTED_COLUMNS, rows, checks)
    report.metadata["rho_image"] = rho_image
    report.metadata["skipped"] = skipped
    basis = [("e1", True), ("e2", True)] if members else []
    smooth = OrderedDict(basis + [(f.label(), f.smooth) for f in members])
    _attach_slope_verdicts(report, config, smooth, slopes)
    return report


class ExperimentReport(object):

    def __init__(self, command, config, columns, rows, checks, certificate_failures=None):
        self.command = command
        self.config = config
        self.columns = columns
        self.rows = rows
        self.checks = checks
        self.certificate_failures = certificate_failures if certificate_failures else []
        self.metadata = {
            "command": command,
            "config": config.serialize(),
            "checks": DataEncoder.encode_checks(checks),
            "certificate_failures": self.certificate_failures,
            "row_count": len(rows)
        }

    def hard_checks_passed(self):
        return all(passed for _, passed, _ in self.checks)

    def exit_code(self, strict=False):
        if not self.hard_checks_passed():
            return 1
        if strict and self.certificate_failures:
            return 2
        return 0


class ConvergenceReport(ExperimentReport):

    def __init__(self, config, rows, checks, sup_errors, slopes):
        ExperimentReport.__init__(self, "converge", config, DataEncoder.CONVERGENCE_COLUMNS, rows, checks)
        self.sup_errors = sup_errors
        self.slopes = slopes


class ExperimentConfig(object):

    DEFAULTS = {
        "gf": { "coeffs": [1.0, 1.0] },
        "scale": { "kind": "power", "theta": 0.5 },
        "n_list": [100, 1000, 10000],
        "x_grid": { "A": 1.0, "points": 33 },
        "functions": list(DEFAULT_SUITE),
        "outputs": "out",
        "epsilon": Const.DEFAULT_EPSILON,
        "quad_order": Const.DEFAULT_QUAD_ORDER,
        "weighted": { "X_max": Const.DEFAULT_X_MAX, "grid_n": 200 },
        "certificates": {
            "theorems": list(ALL_THEOREMS),
            "alpha": [0.5, 1.0],
            "alpha1": 1.0,
            "alpha2": 1.0,
            "lip_domain": [0.0, 20.0],
            "lip_samples": 400,
            "lip_margin": 0.0
        },
        "allow_invalid_scale": False
    }

    def __init__(self, data):
        self.data = data
        self.gf = _parse(lambda: GeneratingFunction.deserialize(data["gf"]), "gf")
        self.scale = _parse(lambda: ScaleSequence.deserialize(data["scale"]), "scale")
        self.n_list = data["n_list"]
        self.x_grid = data["x_grid"]
        self.functions = data["functions"]
        self.outputs = data["outputs"]
        self.epsilon = data["epsilon"]
        self.quad_order = data["quad_order"]
        self.weighted = data["weighted"]
        self.certificates = data["certificates"]
        self.allow_invalid_scale = data["allow_invalid_scale"]

    @classmethod
    def from_dict(self, data):
        if not isinstance(data, dict):
            raise ConfigError("config root must be an object (got %s)" % type(data).__name__)
        unknown = sorted(set(data) - set(self.DEFAULTS))
        if unknown:
            raise ConfigError("unknown config key(s): %s" % unknown)
        merged = {}
        for key, default in self.DEFAULTS.items():
            value = data.get(key, default)
            if isinstance(default, dict) and key not in ["gf", "scale"]:
                if not isinstance(value, dict):
                    raise ConfigError("%s: must be an object" % key)
                extra = sorted(set(value) - set(default))
                if extra:
                    raise ConfigError("%s: unknown key(s) %s" % (key, extra))
                value = dict(default, **value)
            merged[key] = json.loads(json.dumps(value))
        config = self(merged)
        config.validation()
        return config

    @classmethod
    def from_file(self, path):
        try:
            with open(path) as f:
                data = json.load(f)
        except IOError as e:
            raise ConfigError("%s: cannot read config (%s)" % (path, e))
        except ValueError as e:
            raise ConfigError("%s: invalid JSON at line %s (%s)" % (path, getattr(e, "lineno", "?"), e))
        return self.from_dict(data)

    def serialize(self):
        return json.loads(json.dumps(self.data))

    def validation(self):
        n_list = self.n_list
        if not isinstance(n_list, list) or len(n_list) == 0:
            raise ConfigError("n_list: must be a non-empty list")
        for i, n in enumerate(n_list):
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ConfigError("n_list[%d]: must be an integer >= 1 (got %s)" % (i, n))
        if any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise ConfigError("n_list: must be strictly increasing (got %s)" % n_list)
        if not _is_number(self.x_grid["A"]) or self.x_grid["A"] <= 0:
            raise ConfigError("x_grid.A: must be > 0 (got %s)" % self.x_grid["A"])
        if not isinstance(self.x_grid["points"], int) or self.x_grid["points"] < 2:
            raise ConfigError("x_grid.points: must be an integer >= 2 (got %s)" % self.x_grid["points"])
        if not _is_number(self.epsilon) or not (0 < self.epsilon < 1):
            raise ConfigError("epsilon: must be in (0, 1) (got %s)" % self.epsilon)
        if not isinstance(self.quad_order, int) or self.quad_order < 2:
            raise ConfigError("quad_order: must be an integer >= 2 (got %s)" % self.quad_order)
        if not _is_number(self.weighted["X_max"]) or self.weighted["X_max"] <= 0:
            raise ConfigError("weighted.X_max: must be > 0 (got %s)" % self.weighted["X_max"])
        if not isinstance(self.weighted["grid_n"], int) or self.weighted["grid_n"] < 1:
            raise ConfigError("weighted.grid_n: must be an integer >= 1 (got %s)" % self.weighted["grid_n"])
        if not isinstance(self.allow_invalid_scale, bool):
            raise ConfigError("allow_invalid_scale: must be true or false (got %s)" % self.allow_invalid_scale)
        verdict = ScaleChecker.scale_validate(self.scale)
        if not self.allow_invalid_scale and not verdict["valid"]:
            raise ConfigError("scale: %s is invalid (%s)" % (self.scale, "; ".join(verdict["reasons"])))
        if not isinstance(self.functions, list) or len(self.functions) == 0:
            raise ConfigError("functions: must be a non-empty list")
        for i, entry in enumerate(self.functions):
            _parse(lambda: gen_function(entry), "functions[%d]" % i)
        self.__validate_certificates()

    def operator_configs(self):
        return [OperatorConfig(self.gf, n, self.scale, self.epsilon, self.quad_order, self.allow_invalid_scale)
                for n in self.n_list]

    def x_points(self):
        return np.linspace(0.0, float(self.x_grid["A"]), self.x_grid["points"])

    def function_suite(self):
        return gen_functions(self.functions)

    def __validate_certificates(self):
        cert = self.certificates
        _check_theorems(cert["theorems"], "certificates.theorems")
        alphas = cert["alpha"]
        if not isinstance(alphas, list) or any(not _is_number(a) or not (0 < a <= 1) for a in alphas):
            raise ConfigError("certificates.alpha: every alpha must be in (0, 1] (got %s)" % alphas)
        for key in ["alpha1", "alpha2"]:
            if not _is_number(cert[key]) or cert[key] <= 0:
                raise ConfigError("certificates.%s: must be > 0 (got %s)" % (key, cert[key]))
        lo_hi = cert["lip_domain"]
        if not isinstance(lo_hi, list) or len(lo_hi) != 2 or not (0 <= lo_hi[0] < lo_hi[1]):
            raise ConfigError("certificates.lip_domain: must be [lo, hi] with 0 <= lo < hi (got %s)" % lo_hi)
        if not isinstance(cert["lip_samples"], int) or cert["lip_samples"] < 2:
            raise ConfigError("certificates.lip_samples: must be an integer >= 2 (got %s)" % cert["lip_samples"])
        if not _is_number(cert["lip_margin"]) or cert["lip_margin"] < 0:
            raise ConfigError("certificates.lip_margin: must be >= 0 (got %s)" % cert["lip_margin"])


def _parse(builder, key):
    try:
        return builder()
    except ConfigError:
        raise
    except (KantorovichError, ValueError, TypeError, KeyError) as e:
        raise ConfigError("%s: %s" % (key, e))

def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)

def _check_theorems(theorems, key):
    unknown = [t for t in theorems if t not in ALL_THEOREMS]
    if unknown:
        raise ConfigError("%s: unknown theorem(s) %s (known: %s)" % (key, unknown, ALL_THEOREMS))

def _map_cells(func, cells, threads):
    if threads <= 1:
        return [func(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, cells))

def _eval_cell(cell):
    f, cfg, x = cell
    f_x = f.evaluate(x)
    return DataEncoder.encode_eval_row(f.label(), cfg, float(x), f_x,
        KantorovichOperator.eval_P(cfg, f, x), KantorovichOperator.eval_L_star(cfg, f, x))

def _abs_error_cell(cell):
    f, cfg, x = cell
    return abs(KantorovichOperator.eval_L_star(cfg, f, x) - f.evaluate(x))

def _moment_cell(cell):
    cfg, x = cell
    return MomentLab.central_moments(cfg, float(x))

def _certificate_cells(config, theorems):
    cert = config.certificates
    cells, skipped = [], []
    for f in config.function_suite():
        lip = {}
        if Const.Theorem.T3 in theorems and not f.derivatives_known:
            skipped.append({ "theorem": Const.Theorem.T3, "label": f.label(), "reason": "derivatives unknown" })
        if Const.Theorem.T4 in theorems and f.bound() is None:
            skipped.append({ "theorem": Const.Theorem.T4, "label": f.label(), "reason": "unbounded" })
        if Const.Theorem.T5 in theorems:
            for alpha in cert["alpha"]:
                estimate = ModulusEstimator.lip_M_estimate(f, alpha, cert["alpha1"], cert["alpha2"],
                    tuple(cert["lip_domain"]), cert["lip_samples"])
                lip[alpha] = estimate * (1.0 + cert["lip_margin"])
        for cfg in config.operator_configs():
            for x in config.x_points():
                x = float(x)
                if Const.Theorem.T2 in theorems:
                    cells.append((Const.Theorem.T2, cfg, f, x, float(config.x_grid["A"])))
                if Const.Theorem.T3 in theorems and f.derivatives_known:
                    cells.append((Const.Theorem.T3, cfg, f, x, None))
                if Const.Theorem.T4 in theorems and f.bound() is not None:
                    cells.append((Const.Theorem.T4, cfg, f, x, None))
                if Const.Theorem.T5 in theorems and x > 0:
                    for alpha in cert["alpha"]:
                        cells.append((Const.Theorem.T5, cfg, f, x, (alpha, cert, lip[alpha])))
    return cells, skipped

def _certificate_cell(cell):
    theorem, cfg, f, x, extra = cell
    if theorem == Const.Theorem.T2:
        return CertificateBuilder.certificate_T2(cfg, f, x, extra)
    if theorem == Const.Theorem.T3:
        return CertificateBuilder.certificate_T3(cfg, f, x)
    if theorem == Const.Theorem.T4:
        return CertificateBuilder.certificate_T4(cfg, f, x)
    alpha, cert, M_lip = extra
    return CertificateBuilder.certificate_T5(cfg, f, alpha, cert["alpha1"], cert["alpha2"], M_lip, x,
        tuple(cert["lip_domain"]), cert["lip_samples"])

def _certificate_failures(certs):
    failures = ["%s %s n=%d x=%s" % (c.theorem, c.label, c.n, c.x) for c in certs
                if c.theorem != Const.Theorem.T4 and not c.pass_oracle]
    for key, summary in _t4_summaries(certs).items():
        if not summary["bounded"]:
            failures.append("T4 %s: ratio not bounded (sup=%s, median=%s)" % (key, summary["sup"], summary["median"]))
    return failures

def _t4_summaries(certs):
    groups = OrderedDict()
    for c in certs:
        if c.theorem == Const.Theorem.T4:
            groups.setdefault("%s x=%s" % (c.label, c.x), []).append(c)
    return OrderedDict((key, CertificateBuilder.t4_ratio_summary(group)) for key, group in groups.items())

def _attach_slope_verdicts(report, config, smooth_by_label, slopes):
    expected, ok = slope_verdicts(config.scale, smooth_by_label, slopes, Const.Tolerance.SLOPE)
    report.metadata["slopes"] = dict(slopes)
    report.metadata["expected_slope"] = expected
    report.metadata["slope_ok"] = ok

def _dedupe_rows(rows):
    seen, unique = set(), []
    for row in rows:
        key = (row["label"], row["n"])
        if key not in seen:
            seen.add(key)
            unique.append(row)
    return unique
