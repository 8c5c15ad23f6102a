"""Configuration constants for equilef"""

# Desk-scale limits
MAX_GROUP_ORDER = 10000
MAX_CELLS = 100000

# Groups with at most this many elements get a full associativity check;
# larger ones are checked against a generating set (Light's test)
FULL_ASSOCIATIVITY_LIMIT = 64

# Fixed-point modes
MODE_MAP = 'map'
MODE_FIELD = 'field'
FIXED_POINT_MODES = [MODE_MAP, MODE_FIELD]

# Output formats
FORMAT_TABLE = 'table'
FORMAT_JSON = 'json'
OUTPUT_FORMATS = [FORMAT_TABLE, FORMAT_JSON]

# CLI exit codes
EXIT_OK = 0
EXIT_COMPUTATION_ERROR = 1
EXIT_USAGE_ERROR = 2

# Verification verdicts
VERDICT_PASS = 'PASS'
VERDICT_FAIL = 'FAIL'

# Supported input extensions (YAML parses both)
SUPPORTED_INPUT_FORMATS = ['.json', '.yaml', '.yml']

# Default configuration, overridden by config.yaml
DEFAULT_CONFIG = {
    'defaults': {
        'output_format': FORMAT_TABLE,
    },
    'logging': {
        'level': 'WARNING',
        'format': '%(levelname)s %(name)s: %(message)s',
    },
    'verification': {
        'seed': 2024,
        'triples_per_group': 40,
        'realization_sets_per_group': 10,
        'corpus': ['Z2', 'Z3', 'Z4', 'Z2xZ2', 'S3'],
    },
}
