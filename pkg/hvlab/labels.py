"""Column labels shared by experiment tables and plots."""


N = 'n'
DEGREE = 'degree'
DEPTH = 'depth'
RADIUS = 'radius'
INDEX = 'index'

NORM = 'norm'
NORM_SQUARED = 'norm_squared'
CLOSED_FORM = 'closed_form'
REL_ERR = 'rel_err'
RESIDUAL = 'residual'
CONTROL_RESIDUAL = 'control_residual'
BRUTE_FORCE = 'brute_force'
RATIO = 'ratio'
STATUS = 'status'
VALUE = 'value'
COEFF_GAP = 'coeff_gap'
BMOA_MONOMIAL = 'bmoa_monomial'
GROWTH = 'growth'
LOWER = 'lower'
UPPER = 'upper'
FUNCTION = 'function'
