"""
Verification suite manifest: which checks run, their battery sizes and
their tolerances, plus the built-in Neumann scenarios.

Everything here is plain data; a run config may override any tolerance by
check name under "verify.tolerances".
"""

SCENARIOS = {
    "zero-3d": {
        "domain": {"m": 3, "n": 1, "alpha": [0.25]},
        "data": [],
        "quadrature": {"base_order": 8, "refinement_levels": 1, "target_rel_tol": 1e-3},
        "flux": [{"face": 1, "base": [0.0, 0.3, -0.2], "steps": [0.1, 0.05, 0.025, 0.0125]}],
        "decay": {"direction": [1.0, 1.0, 1.0], "radii": [10.0, 20.0, 40.0]},
        "residual": {"lower": [0.5, -0.5, -0.5], "upper": [1.5, 0.5, 0.5], "count": 3, "h": 0.01},
    },
    "bump-3d": {
        "domain": {"m": 3, "n": 1, "alpha": [0.25]},
        "data": [{"face": 1, "kind": "gaussian", "center": [0.0, 0.0], "width": 0.8,
                  "amplitude": 1.0, "eps": 0.5}],
        "quadrature": {"base_order": 8, "refinement_levels": 1, "target_rel_tol": 1e-3},
        "flux": [{"face": 1, "base": [0.0, 0.0, 0.0], "steps": [0.1, 0.05, 0.025, 0.0125]}],
        "decay": {"direction": [1.0, 1.0, 1.0], "radii": [10.0, 20.0, 40.0]},
        "residual": {"lower": [0.5, -0.5, -0.5], "upper": [1.5, 0.5, 0.5], "count": 5, "h": 0.01},
    },
    "algebraic-3d": {
        "domain": {"m": 3, "n": 1, "alpha": [0.25]},
        "data": [{"face": 1, "kind": "algebraic", "amplitude": 1.0, "eps": 0.5}],
        "quadrature": {"base_order": 8, "refinement_levels": 1, "target_rel_tol": 1e-2},
        "decay": {"direction": [1.0, 1.0, 1.0], "radii": [10.0, 20.0, 40.0]},
    },
    "algebraic-4d": {
        "domain": {"m": 4, "n": 2, "alpha": [0.25, 0.25]},
        "data": [{"face": 1, "kind": "algebraic", "amplitude": 1.0, "eps": 0.5},
                 {"face": 2, "kind": "algebraic", "amplitude": 0.5, "eps": 0.5}],
        "eval": {"quadrature_order": 16},
        "quadrature": {"base_order": 6, "refinement_levels": 1, "target_rel_tol": 1e-2},
        "off_face": [
            {"l": 1, "k": 2, "base": [0.0, 1.0, 0.3, -0.2], "steps": [0.1, 0.05, 0.025, 0.0125]},
            {"l": 2, "k": 1, "base": [1.0, 0.0, 0.3, -0.2], "steps": [0.1, 0.05, 0.025, 0.0125]},
        ],
        "decay": {"direction": [1.0, 1.0, 1.0, 1.0], "radii": [10.0, 20.0, 40.0]},
        "residual": {"lower": [0.8, 0.8, -0.2, -0.2], "upper": [1.2, 1.2, 0.2, 0.2],
                     "count": 2, "h": 0.01},
    },
}

_IDENTITIES = {
    "legendre_duplication": {"cases": 200, "tolerance": 1e-10},
    "pochhammer_doubling": {"cases": 200, "tolerance": 1e-12},
    "fa_reduction": {"points": 50, "tolerance": 1e-12},
    "fa_zero_slot": {"cases": 50, "tolerance": 1e-12},
    "fa_series_vs_integral": {"cases": 100, "max_n": 4, "tolerance": 1e-8},
    "fa_reflection": {"cases": 40, "max_n": 3, "tolerance": 1e-10},
    "fa_differentiation": {"cases": 200, "max_n": 4, "step": 1e-5, "tolerance": 1e-6},
    "fa_adjacent": {"cases": 200, "max_n": 4, "tolerance": 1e-10},
    "classical_integrals": {"cases": 20, "tolerance": 1e-8},
}

_LEMMA2 = [
    {"name": "n1_arctan", "p": [1.0], "q": [2.0], "r": [1.0], "s": 1.0, "t": 0.0,
     "method": "nested", "budget": 200, "tolerance": 1e-6},
    {"name": "n1_unit", "p": [1.0], "q": [1.0], "r": [1.0], "s": 2.0, "t": 0.0,
     "method": "nested", "budget": 200, "tolerance": 1e-6},
    {"name": "n2_quarter_pi", "p": [1.0, 1.0], "q": [2.0, 2.0], "r": [1.0, 1.0], "s": 2.0, "t": 0.0,
     "method": "nested", "budget": 200, "tolerance": 1e-5},
    {"name": "n2_scaled", "p": [1.5, 1.0], "q": [2.0, 1.0], "r": [2.0, 0.5], "s": 3.0, "t": 0.0,
     "method": "nested", "budget": 200, "tolerance": 1e-6},
    {"name": "n1_shifted_nested", "p": [1.5], "q": [2.0], "r": [2.0], "s": 1.5, "t": 0.25,
     "method": "nested", "budget": 200, "tolerance": 1e-6},
    {"name": "n1_shifted_qmc", "p": [1.5], "q": [2.0], "r": [2.0], "s": 1.5, "t": 0.25,
     "method": "qmc", "budget": 1 << 20, "tolerance": 1e-4},
    {"name": "n3_qmc", "p": [1.0, 1.0, 1.0], "q": [2.0, 2.0, 2.0], "r": [1.0, 1.0, 1.0], "s": 2.0,
     "t": 0.0, "method": "qmc", "budget": 1 << 20, "tolerance": 1e-3},
]

_LEMMA1 = {"sets": 10, "varying": 3, "eps": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6], "tolerance": 1e-3}

_FUNDAMENTAL = [
    {"domain": {"m": 3, "n": 1, "alpha": [0.25]}, "samples": 6},
    {"domain": {"m": 4, "n": 2, "alpha": [0.25, 0.25]}, "samples": 6},
]

FUNDAMENTAL_TOLERANCES = {
    "symmetry": 1e-12,
    "residual": 1e-4,
    "order": 0.5,
    "normal_derivative": 1e-2,
    "homogeneity": 1e-9,
}

NEUMANN_TOLERANCES = {
    "flux_recovery": 0.02,
    "off_face_slope": 0.1,
    "decay": 0.1,
    "residual": 1e-3,
}

SUITES = {
    "default": {
        "identities": _IDENTITIES,
        "lemma2": _LEMMA2,
        "lemma1": _LEMMA1,
        "fundamental": _FUNDAMENTAL,
        "neumann": ["zero-3d", "bump-3d", "algebraic-3d", "algebraic-4d"],
        "energy": [{"scenario": "bump-3d", "radius": 8.0, "tolerance": 0.05,
                    "grids": [[8, 8, 16], [12, 12, 24]]}],
    },
    "quick": {
        "identities": {name: dict(entry, **({"cases": 20} if "cases" in entry else {}))
                       for name, entry in _IDENTITIES.items()},
        "lemma2": [e for e in _LEMMA2 if e["method"] == "nested"],
        "lemma1": dict(_LEMMA1, sets=3, varying=1),
        "fundamental": [dict(_FUNDAMENTAL[0], samples=2)],
        "neumann": ["zero-3d"],
        "energy": [],
    },
}
