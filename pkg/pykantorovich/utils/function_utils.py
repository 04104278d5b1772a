from pykantorovich.engine.functions import TestFunction

PRESETS = {
    "one": lambda: TestFunction.constant(1.0),
    "x": lambda: TestFunction.monomial(1),
    "x^2": lambda: TestFunction.monomial(2),
    "exp(-x)": lambda: TestFunction.exp(-1.0),
    "sin(x)": lambda: TestFunction.sin(1.0),
    "sin(2x)": lambda: TestFunction.sin(2.0),
    "|x-0.5|": lambda: TestFunction.abs_shift(0.5),
    "x^2*exp(-x)": lambda: TestFunction.exp_monomial(2, -1.0),
    "clamp(x^2,1)": lambda: TestFunction.clamp(TestFunction.monomial(2), 1.0),
    "rho": TestFunction.rho
}

DEFAULT_SUITE = ["exp(-x)", "sin(x)", "|x-0.5|"]

def gen_function(entry):
    """A TestFunction from a preset name or a serialized descriptor."""
    if isinstance(entry, TestFunction):
        return entry
    if isinstance(entry, str):
        if entry not in PRESETS:
            raise ValueError('unknown function preset "%s" (known: %s)' % (entry, sorted(PRESETS)))
        return PRESETS[entry]()
    if isinstance(entry, dict):
        return TestFunction.deserialize(entry)
    raise TypeError("function entry must be a preset name or a descriptor dict (got %s)" % type(entry))

def gen_functions(entries):
    return [gen_function(entry) for entry in entries]
