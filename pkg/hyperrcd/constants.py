# Numerical tolerances.
MASS_RTOL_ERROR = 1e-9
BALANCE_TOL = 1e-9

# Run defaults.
DEFAULT_ALPHA = 0.5
DEFAULT_ETA = 0.1
DEFAULT_ITERATIONS = 20
DEFAULT_FLOOR_RATIO = 1e-6
DEFAULT_SEED = 2021
DEFAULT_REPEATS = 5
DEFAULT_BUDGET = 5_000_000

VALID_FORMATS = ('hg-text', 'hg-json', 'hyperedge-list')
SUPERVISED = 'supervised'
UNSUPERVISED = 'unsupervised'
VALID_MODES = (SUPERVISED, UNSUPERVISED)
VALID_SERIES = ('D1', 'D2', 'D3')

# Synthetic series grids.
SERIES_TO_GRID = {
    'D1': {'n': 100, 'q': 3, 'p_intra': 0.85,
           'avg_degree': [3, 6, 9, 12, 15, 18, 21, 24, 27, 30]},
    'D2': {'n': 100, 'q': 3, 'avg_degree': 3,
           'p_intra': [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85]},
    'D3': {'q': 10, 'p_intra': 0.85, 'avg_degree': 10,
           'n': [100, 200, 300, 400, 500, 600, 700, 800, 900, 1000]},
}
DEFAULT_SIZE_RANGE = (2, 6)

# Shapes of the shipped real-world fixtures.
DATASET_TO_SHAPE = {
    'zoo': {'n': 101, 'm': 43, 'avg_size': 39.9, 'avg_degree': 17.0,
            'communities': 7},
}

# Result files under out/<run-id>/.
RUN_FILES = {
    'config': 'config.json',
    'flow': 'flow.csv',
    'summary': 'flow_summary.csv',
    'sweep': 'sweep.csv',
    'partition': 'partition.labels',
    'report': 'report.json',
    'timing': 'timing.json',
}
