"""
Configuration file for the Asian option boundary toolkit
Defaults for model parameters, grids, solvers, Monte Carlo and output
"""

import os
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

TOOLKIT_VERSION = "1.0.0"

# --- Market and contract parameters (years, continuous rates) ---
MODEL_DEFAULTS: Dict[str, Any] = {
    'r': float(os.getenv('ASIAN_RATE', '0.06')),
    'q': float(os.getenv('ASIAN_DIVIDEND', '0.04')),
    'sigma': float(os.getenv('ASIAN_SIGMA', '0.2')),
    'T': float(os.getenv('ASIAN_MATURITY', '50')),
    'averaging': os.getenv('ASIAN_AVERAGING', 'arith'),
    'kind': os.getenv('ASIAN_KIND', 'call'),
}

# --- Front-fixing grid ---
GRID_CONFIG: Dict[str, Any] = {
    'n': int(os.getenv('ASIAN_GRID_N', '200')),
    'm': int(os.getenv('ASIAN_GRID_M', '20000')),
    'L': float(os.getenv('ASIAN_GRID_L', '2.0')),
}

FRONT_FIXING_CONFIG: Dict[str, Any] = {
    'tol_fp': 1e-10,
    'p_max': 50,
    'monitor_eps': 1e-6,
    'surface_stride': 1,
}

# --- PSOR solver for the reduced variational inequality ---
PSOR_CONFIG: Dict[str, Any] = {
    'x_min': 0.02,
    'x_max': 10.0,
    'n': int(os.getenv('ASIAN_PSOR_N', '400')),
    'm': int(os.getenv('ASIAN_PSOR_M', '20000')),
    'omega': 1.5,
    'tol': 1e-8,
    'max_iter': 10_000,
    'contact_tol': 1e-10,
    'peclet_limit': 2.0,
}

# --- Quadrature ---
QUADRATURE_CONFIG: Dict[str, Any] = {
    'nodes': 512,
    'h_star_nodes': 512,
    'h_star_bracket': (-2.0, 0.0),
    'moment_series_nodes': 32,
}

ROOT_FINDING_CONFIG: Dict[str, Any] = {
    'xtol': 1e-15,
    'residual_tol': 1e-12,
    'max_iter': 200,
    'max_halvings': 2000,
}

LOGNORMAL_CONFIG: Dict[str, Any] = {
    'series_threshold': 1e-7,
    'beta_clamp_tol': 1e-14,
}

# --- Monte Carlo oracle ---
MC_CONFIG: Dict[str, Any] = {
    'n_paths': int(os.getenv('ASIAN_MC_PATHS', '1000000')),
    'steps_per_year': 512,
    'block_size': 65_536,
    'workers': int(os.getenv('ASIAN_MC_WORKERS', '1')),
    'generator': 'Philox',
    'seed': int(os.getenv('ASIAN_SEED', '20240601')),
    'antithetic': False,
}

# --- Output ---
OUTPUT_CONFIG: Dict[str, Any] = {
    'significant_digits': 10,
    'comment_prefix': '# ',
    'surface_slices': [0.1, 1.0, 5.0, 25.0, 50.0],
}

# Logging Configuration
LOGGING_CONFIG: Dict[str, Any] = {
    'level': os.getenv('ASIAN_LOG_LEVEL', 'INFO'),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'file_path': os.getenv('ASIAN_LOG_FILE') or None,
}
