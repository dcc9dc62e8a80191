"""
Simulation package
Monte Carlo oracles for moments, European values and the numeraire identity
"""

from simulation.mc_oracle import (
    McEstimate,
    McSettings,
    block_generator,
    simulate_paths,
    mc_european_value,
    mc_moments,
    mc_numeraire_check,
    estimates_frame,
)

__all__ = [
    'McEstimate',
    'McSettings',
    'block_generator',
    'simulate_paths',
    'mc_european_value',
    'mc_moments',
    'mc_numeraire_check',
    'estimates_frame',
]
