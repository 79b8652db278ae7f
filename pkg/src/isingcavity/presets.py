"""Built-in run configurations."""

# Headline parameter set: kappa = 0.03, g = 0.0005, resonant drive, 100
# qubits, with fields and drive windows wide enough to cover every
# switching threshold of the J_x list.
PAPER_FIG1 = {
    "params": {"g": 5e-4, "kappa": 0.03, "delta_c": 0.0, "M": 100},
    "fig1": {
        "J_x_list": [1.4, 1.6, 1.8, 2.0],
        "eps2_grid": {"start": 0.0, "stop": 3.2, "count": 321},
    },
    "fig2": {
        "J_grid": {"start": 1.2, "stop": 2.2, "count": 41},
        "eps2_grid": {"start": 0.0, "stop": 4.0, "count": 41},
    },
    "sweep": {
        "J_x": 1.8,
        "direction": "up",
        "eps2_grid": {"start": 0.0, "stop": 3.2, "count": 321},
    },
    "circuit": {
        "spec": {
            "C0": 1e-15,
            "C1": 1e-16,
            "E_J": 7.2e9,
            "L_r": 100e-12,
            "C_r": 0.1e-12,
            "I_r": 1200e-9,
            "I_q2": 80e-9,
            "M": 100,
        },
        "ferro_coupling_Hz": 2e9,
        "kappa_Hz": 6e7,
        "detuning_Hz": 0.0,
    },
    "tfim": {"J": 1.8},
}

PRESETS = {"paper-fig1": PAPER_FIG1}
