class ReportSummarizer(object):

    def __init__(self, verbose):
        self.verbose = verbose

    def print_message(self, message):
        print(message)

    def report(self, message, level=1):
        if self.verbose >= level and message is not None:
            self.print_message(message)

    def summarize_sweep_step(self, command, n, count):
        base = '[%s] n=%d done (%d rows)'
        return base % (command, n, count)

    def summarize_eval(self, rows):
        base = 'Evaluated %d (f, n, x) points. (max |L* f - f| = %s)'
        worst = max([row["error"] for row in rows]) if rows else 0.0
        return base % (len(rows), worst)

    def summarize_moments(self, rows, closed_ok):
        base = 'Moment audit over %d (n, x) points. (closed form agrees = %s)'
        return base % (len(rows), closed_ok)

    def summarize_certificates(self, flags):
        base = 'Certificates finished. (%s)'
        parts = ['%s: paper=%s oracle=%s' % (theorem, flag["pass_paper"], flag["pass_oracle"])
                 for theorem, flag in sorted(flags.items())]
        return base % ", ".join(parts)

    def summarize_convergence(self, slopes):
        base = 'Convergence finished. (slopes = %s)'
        return base % slopes

    def summarize_weighted(self, rho_image, slopes):
        base = 'Weighted sweep finished. (rho image bounded = %s, sup = %s, slopes = %s)'
        return base % (rho_image["bounded"], rho_image["sup_value"], slopes)

    def summarize_checks(self, checks):
        failed = [name for name, passed, _ in checks if not passed]
        if not failed:
            return 'All %d checks passed.' % len(checks)
        return 'Failed checks: %s' % failed
