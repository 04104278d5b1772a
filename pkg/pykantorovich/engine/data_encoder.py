from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const


class DataEncoder:

  EVAL_COLUMNS = ["label", "n", "x", "b_n", "f_x", "P_n", "L_star", "error"]
  MOMENT_COLUMNS = [
      "n", "x", "b_n", "m0", "m1", "m2", "mu1", "mu2",
      "closed_m1", "closed_m2", "paper_m1", "paper_mu1", "paper_mu2", "theta_n",
      "delta_closed_m1", "delta_closed_m2", "delta_paper_m1", "delta_paper_mu1", "delta_paper_mu2"
  ]
  CERTIFICATE_COLUMNS = [
      "theorem", "n", "x", "label", "lhs", "rhs_paper", "rhs_oracle",
      "pass_paper", "pass_oracle", "ratio_paper", "ratio_oracle"
  ]
  CONVERGENCE_COLUMNS = ["label", "n", "b_n", "sup_error", "argmax_x", "slope"]
  WEIGHTED_COLUMNS = ["n", "label", "weighted_error", "slope"]

  @classmethod
  def encode_eval_row(self, label, cfg, x, f_x, p_value, l_value):
    return {
        "label": label,
        "n": cfg.n,
        "x": x,
        "b_n": cfg.b_n(),
        "f_x": f_x,
        "P_n": p_value,
        "L_star": l_value,
        "error": abs(l_value - f_x)
    }

  @classmethod
  def encode_moment_report(self, report):
    paper = report.paper_claims
    delta = report.discrepancies
    return {
        "n": report.n,
        "x": report.x,
        "b_n": report.b_n,
        "m0": report.raw[0],
        "m1": report.raw[1],
        "m2": report.raw[2],
        "mu1": report.mu1(),
        "mu2": report.mu2(),
        "closed_m1": report.closed_form[1],
        "closed_m2": report.closed_form[2],
        "paper_m1": paper["m1"],
        "paper_mu1": paper["mu1"],
        "paper_mu2": paper["mu2"],
        "theta_n": report.theta_n(),
        "delta_closed_m1": delta["closed_m1"],
        "delta_closed_m2": delta["closed_m2"],
        "delta_paper_m1": delta["paper_m1"],
        "delta_paper_mu1": delta["paper_mu1"],
        "delta_paper_mu2": delta["paper_mu2"]
    }

  @classmethod
  def encode_certificate(self, cert):
    row = { key: None for key in self.CERTIFICATE_COLUMNS }
    row.update(cert.serialize())
    return row

  @classmethod
  def encode_convergence_row(self, label, cfg, sup_error, argmax_x, slope):
    return {
        "label": label,
        "n": cfg.n,
        "b_n": cfg.b_n(),
        "sup_error": sup_error,
        "argmax_x": argmax_x,
        "slope": slope
    }

  @classmethod
  def encode_weighted_row(self, row):
    return {
        "n": row["n"],
        "label": row["label"],
        "weighted_error": row["weighted_error"],
        "slope": row["slope"]
    }

  @classmethod
  def encode_checks(self, checks):
    return [{ "name": name, "passed": passed, "detail": detail } for name, passed, detail in checks]

  @classmethod
  def encode_theorem_flags(self, certs):
    flags = {}
    for theorem in [Const.Theorem.T2, Const.Theorem.T3, Const.Theorem.T4, Const.Theorem.T5]:
      mine = [c for c in certs if c.theorem == theorem]
      if mine:
        flags[theorem] = {
            "count": len(mine),
            "pass_paper": all(c.pass_paper for c in mine),
            "pass_oracle": all(c.pass_oracle for c in mine)
        }
    return flags
