# Local path stuff
LOG_FILE_FOLDER_NAME = "logs"
BASE_DATA_FOLDER_NAME = "nightday_data"

# Cleaning
DEFAULT_MIN_LENGTH = 30

# Statistics
MIN_PAIRS = 30
MIN_CORRELATION_PAIRS = 3
RATIO_EPSILON = 1e-10
DEFAULT_METHOD = "spearman"

# Bootstrap
DEFAULT_SEED = 0
DEFAULT_N_BOOT = 1000
MIN_N_BOOT = 200
DEFAULT_CONFIDENCE = 0.95
RNG_SCHEME = "numpy.random.Philox/SeedSequence([seed, resample_index])"

# Synthetic data
DEFAULT_SYNTH_SCALE = 0.01
DEFAULT_SYNTH_START_DATE = "2000-01-03"
DEFAULT_FIRST_CLOSE = 100.0

# Output
SIGNIFICANT_DIGITS = 6
SYNTH_CSV_FLOAT_FORMAT = "%.17g"
SUPPORTED_FORMATS = ("csv", "json", "svg")
