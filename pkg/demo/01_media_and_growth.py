"""
Compare multipole fluxes across media and grow a domain from a scenario.

Step 1 solves the flux system for the same unit disk in several media.
Step 2 evolves the domain described in ``scenario.json`` and writes its
boundary at every output time next to this script.
"""

import json
import logging
from pathlib import Path

import qdomains as qd
from qdomains.cli import Scenario
from qdomains.growth import evolve
from qdomains.verify import kernel_check


def main():
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    here = Path(__file__).parent

    # =========================================================================
    # Step 1: One disk, several media
    # =========================================================================
    disk = qd.ConformalMap.disk(1, 2)
    for medium in ["axis:0", "axis:1", "axis:2", "dihedral:2,1,0"]:
        solution = qd.fluxes_for_map(qd.build_bundle(medium), disk)
        print(f"{medium:>16}: {json.dumps(solution.fluxes.to_config())}")

    bundle = qd.build_bundle("axis:1")
    report = kernel_check(disk, bundle, qd.fluxes_for_map(bundle, disk), 4)
    print(f"Kernel functionals vanish: {report.passed}")

    # =========================================================================
    # Step 2: Growth from a scenario
    # =========================================================================
    scenario = Scenario.load(here / "scenario.json")
    frames = evolve(scenario.source_schedule(), scenario.medium, scenario.outputs.times)

    out = here / "output"
    out.mkdir(exist_ok=True)
    for i, frame in enumerate(frames):
        frame.conformal_map.boundary_frame(scenario.outputs.boundary_samples).to_csv(
            out / f"boundary_{i:04d}.csv", index=False
        )
        print(f"t = {frame.t}: {json.dumps(frame.conformal_map.to_config())}")
    print(f"Wrote {len(frames)} boundaries to {out}")


if __name__ == "__main__":
    main()
