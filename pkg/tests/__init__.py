import warnings

# numba deprecation chatter from galois kernels
warnings.filterwarnings('ignore', category=Warning, module='numba')
warnings.filterwarnings('ignore', category=Warning, module='galois')
