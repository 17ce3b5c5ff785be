# kuniform: k-uniform graph states, their certification and preparation circuits
__version__ = "0.1.0"
