#!/usr/bin/env python3
"""Writes the experiment grids under configs/ (desk and full profiles)."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "configs"

SYSADMIN_ALGOS = ["fvmcts_maxplus", "fvmcts_varel", "naive_mcts", "iql", "random"]
DRONE_ALGOS = ["fvmcts_maxplus", "fvmcts_varel", "naive_mcts", "iql"]

# agents: (resolution, noise, c, depth, iterations)
DRONE_ROWS = {
    4: (0.20, 0.10, 5, 10, 4000),
    8: (0.20, 0.10, 5, 10, 4000),
    16: (0.10, 0.05, 10, 10, 8000),
    32: (0.08, 0.05, 20, 10, 16000),
    48: (0.05, 0.02, 30, 10, 24000),
}


def sysadmin(topology, n, algo, iterations, episodes):
    domain = {"name": "sysadmin", "topology": topology, "n_agents": n}
    if topology == "ring_of_rings":
        domain["ring_size"] = 4
    return {
        "domain": domain,
        "algorithm": algo,
        "planner": {"iterations": iterations, "exploration": 20, "depth": 20},
        "episodes": episodes,
        "max_steps": 50,
    }


def drones(n, algo, episodes):
    res, noise, c, depth, iters = DRONE_ROWS[n]
    domain = {"name": "drones", "n_agents": n, "resolution": res, "noise": noise}
    if algo == "fvmcts_varel":
        domain["graph"] = "complete"  # Var-El needs a static graph
    return {
        "domain": domain,
        "algorithm": algo,
        "planner": {"iterations": iters, "exploration": c, "depth": depth},
        "episodes": episodes,
        "max_steps": 100,
    }


def write(profile, name, cfg):
    path = ROOT / profile / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg, indent=2) + "\n")


def main():
    for profile, sizes, iters, episodes, drone_sizes, drone_eps in [
        ("desk", [4, 8, 16], 4000, 10, [4, 8], 10),
        ("full", [4, 8, 16, 32, 48], 16000, 40, [8, 16, 32, 48], 20),
    ]:
        for topology in ["ring", "star", "ring_of_rings"]:
            for n in sizes:
                for algo in SYSADMIN_ALGOS:
                    write(profile, f"sysadmin_{topology}_{n}_{algo}", sysadmin(topology, n, algo, iters, episodes))
        for n in drone_sizes:
            for algo in DRONE_ALGOS:
                write(profile, f"drones_{n}_{algo}", drones(n, algo, drone_eps))

    # Exploration ablation: every flag triple on 4-agent ring and star.
    for topology in ["ring", "star"]:
        for flags in ["TTF", "TTT", "TFT", "TFF", "FTF", "FTT", "FFT", "FFF"]:
            cfg = sysadmin(topology, 4, {"name": "fvmcts_maxplus", "flags": flags}, 4000, 20)
            write("ablation", f"sysadmin_{topology}_4_{flags}", cfg)

    write("smoke", "sysadmin_ring_4_maxplus", {
        "domain": {"name": "sysadmin", "topology": "ring", "n_agents": 4},
        "algorithm": "fvmcts_maxplus",
        "planner": {"iterations": 200, "exploration": 20, "depth": 10},
        "episodes": 4,
        "max_steps": 20,
        "record_timing": False,
    })


if __name__ == "__main__":
    main()
