class KantorovichConstants:

  class FunctionKind:
    MONOMIAL = "monomial"
    EXP = "exp"
    ABS_SHIFT = "abs_shift"
    SIN = "sin"
    TABULATED = "tabulated"
    EXP_MONOMIAL = "exp_monomial"
    CLAMP = "clamp"
    SUM = "sum"

  class ScaleKind:
    POWER = "power"
    LOG = "log"
    CONSTANT = "constant"

  class Theorem:
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"

  class Tolerance:
    NORMALIZATION = 1e-12
    CERTIFICATE = 1e-10
    CLOSED_FORM = 1e-9
    ORACLE_EPSILON = 1e-15
    SLOPE = 0.15

  DEFAULT_EPSILON = 1e-12
  DEFAULT_QUAD_ORDER = 8
  LOG_SPACE_THRESHOLD = 700.0
  DEFAULT_X_MAX = 50.0
  MODULUS_REFINEMENT = 100
