import os
import numpy as np
import logging

# where the sweep output goes when no --out is given
output_directory = ''
default_output_directory = os.path.join(os.getcwd(), 'sweep_output')
# set this to also write a logfile_<timestamp>.txt next to the sweep output, None logs to the console only
log_directory = None
logger_level = logging.INFO
logger_name = 'spin_unruh'

# sweep defaults, all overridden by a --config file and then by the command line flags
default_family = 'bell-phi+'  # one of sweep.FAMILIES
default_spin_pair = 'ud'  # one of 'ud', 'du', 'uu', 'dd', only used with the mode family
r_min = 0.0
r_max = np.pi / 4
steps = 50
x_scale = 'linear'  # one of 'linear', 'log', only used with an x grid
phi = 0.0  # the observables do not depend on it, it is still carried everywhere
output_format = 'csv'  # one of 'csv', 'json'
significant_digits = 17  # full double round trip

# dask scheduler used to evaluate grid points, one of 'threads', 'processes', 'sync'
dask_scheduler = 'threads'
dask_number_of_workers = None  # None lets dask pick

# numerical tolerances
amplitude_prune = 1e-14  # amplitudes below this are dropped after fock arithmetic
normalization_tolerance = 1e-9
hermitian_tolerance = 1e-10
negative_eigenvalue_threshold = -1e-10  # partial transpose eigenvalues below this count as negative
entropy_negative_floor = -1e-8  # a physical state can not have eigenvalues below this
nullspace_rcond = 1e-10
verify_tolerance = 1e-10
