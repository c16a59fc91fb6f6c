#!/usr/bin/env python3
"""Regenerates the synthetic dataset fixtures under data/ and the scenarios
under scenarios/. Output is deterministic (fixed seed)."""

import json
import math
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
SCEN = ROOT / "scenarios"
rng = random.Random(20220101)


def ndbc():
    lines = [
        "#YY  MM DD hh mm WDIR WSPD GST  WVHT   DPD   APD MWD   PRES  ATMP  WTMP  DEWP  VIS  TIDE",
        "#yr  mo dy hr mn degT m/s  m/s     m   sec   sec degT   hPa  degC  degC  degC  nmi    ft",
    ]
    days_in = [31, 28, 31]
    n = 0
    for month, ndays in zip((1, 2, 3), days_in):
        for day in range(1, ndays + 1):
            for hour in range(24):
                n += 1
                if n > 60 * 24:
                    break
                phase = 2 * math.pi * hour / 24
                wspd = max(0.0, 7.0 + 2.0 * math.sin(phase - 1.0) + rng.gauss(0, 1.2))
                gst = wspd * 1.25
                wvht = max(0.2, 2.4 + 0.4 * math.sin(phase / 2) + rng.gauss(0, 0.25))
                dpd = max(4.0, 9.0 + rng.gauss(0, 1.0))
                apd = dpd * 0.72
                wspd_s = f"{wspd:4.1f}"
                dpd_s = f"{dpd:5.2f}"
                # A few sentinel cells, as in real NDBC files.
                if n % 97 == 0:
                    wspd_s = "99.0"
                if n % 131 == 0:
                    dpd_s = "99.00"
                lines.append(
                    f"2022 {month:02d} {day:02d} {hour:02d} 50 {rng.randrange(360):3d} {wspd_s} {gst:4.1f} "
                    f"{wvht:5.2f} {dpd_s} {apd:5.2f} {rng.randrange(360):3d} {1010 + rng.gauss(0, 5):6.1f} "
                    f"{2 + rng.gauss(0, 2):5.1f} {4 + rng.gauss(0, 0.5):5.1f} 999.0 99.0 99.00"
                )
    (DATA / "ndbc_46001_2022.txt").write_text("\n".join(lines) + "\n")


def currents():
    out = ["Date Time, Speed (knots), Dir (true)"]
    for day in range(1, 15):
        for minute in range(0, 24 * 60, 6):
            hours = (day - 1) * 24 + minute / 60
            # Semidiurnal tide, 12.42 h period.
            speed = abs(3.2 * math.sin(2 * math.pi * hours / 12.42)) + abs(rng.gauss(0, 0.08))
            direction = 45 if math.sin(2 * math.pi * hours / 12.42) >= 0 else 225
            out.append(f"2022-01-{day:02d} {minute // 60:02d}:{minute % 60:02d}, {speed:.3f}, {direction}")
    (DATA / "currents_cook_inlet_2022.csv").write_text("\n".join(out) + "\n")


def pvwatts():
    rating = 4.0
    out = [
        '"Requested Location:","Kodiak AK"',
        '"Location:","Lat, Lng: 57.77, -152.42"',
        f'"DC System Size (kW):","{rating}"',
        '"Module Type:","Standard"',
        '"Array Tilt (deg):","20"',
        "",
        '"Month","Day","Hour","Beam Irradiance (W/m^2)","Diffuse Irradiance (W/m^2)",'
        '"Ambient Temperature (C)","Wind Speed (m/s)","Plane of Array Irradiance (W/m^2)",'
        '"Cell Temperature (C)","DC Array Output (W)","AC System Output (W)"',
    ]
    mdays = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
    doy = 0
    for month, nd in enumerate(mdays, start=1):
        for day in range(1, nd + 1):
            doy += 1
            daylen = 12 + 6 * math.sin(2 * math.pi * (doy - 80) / 365)
            sunrise = 12.5 - daylen / 2
            for hour in range(24):
                x = (hour + 0.5 - sunrise) / daylen
                if 0 < x < 1:
                    clear = math.sin(math.pi * x) * (0.55 + 0.35 * math.sin(2 * math.pi * (doy - 80) / 365))
                    ac = max(0.0, clear * rating * 1000 * rng.uniform(0.35, 1.0))
                else:
                    ac = 0.0
                poa = ac / rating
                out.append(f"{month},{day},{hour},{poa * 0.6:.3f},{poa * 0.3:.3f},5.0,4.0,{poa:.3f},8.0,"
                           f"{ac * 1.04:.3f},{ac:.3f}")
    out.append('"Totals","","","","","","","","","",""')
    (DATA / "pvwatts_kodiak_4kw.csv").write_text("\n".join(out) + "\n")


def wec_matrix():
    te = [4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14]
    hs = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0]
    lines = [
        "# Synthetic 750 kW point-absorber power matrix (kW).",
        "# First row: energy period Te (s). First column: significant wave height Hs (m).",
        "Hs/Te," + ",".join(str(t) for t in te),
    ]
    for h in hs:
        row = []
        for t in te:
            resonance = math.exp(-((t - 8.5) / 3.2) ** 2)
            p = min(750.0, 4.5 * h * h * t * resonance)
            row.append(f"{p:.1f}")
        lines.append(f"{h}," + ",".join(row))
    (DATA / "wec_matrix_750kw.csv").write_text("\n".join(lines) + "\n")


def synthetic_load():
    # Flat-dominant 50 MW average with a mild daytime bump.
    bump = [max(0.0, math.sin(math.pi * (h - 6) / 14)) if 6 <= h <= 20 else 0.0 for h in range(24)]
    mean_bump = sum(bump) / 24
    return [round(46000 + 4000 * (b / mean_bump) * 0.98 + 4000 * 0.02, 3) for b in bump]


def alaska_profiles():
    owt, wec, tec, fpv = [], [], [], []
    for h in range(24):
        phase = 2 * math.pi * h / 24
        owt.append(round(4300 + 900 * math.sin(phase - 1.2), 3))
        wec.append(round(190 + 35 * math.sin(phase / 2 + 0.3), 3))
        tec.append(round(abs(470 * math.sin(2 * math.pi * h / 12.42)), 3))
        x = (h + 0.5 - 5.0) / 14.0
        fpv.append(round(0.26 * math.sin(math.pi * x), 4) if 0 < x < 1 else 0.0)
    return {"wec": wec, "tec": tec, "owt": owt, "fpv": fpv}


def write(name, doc):
    (SCEN / name).write_text(json.dumps(doc, indent=2) + "\n")


def scenarios():
    load = synthetic_load()
    assert abs(sum(load) / 24 - 50000) < 1e-6 * 50000, sum(load) / 24
    write("default_costs.json", {
        "region": "default_costs",
        "description": "Synthetic 50 MW-average platform load with Alaska-like resource profiles; "
                       "default unit costs, 80%/95% battery efficiencies, 20-year life.",
        "profiles": dict(load=load, **alaska_profiles()),
    })
    write("datasets_kodiak.json", {
        "region": "kodiak_datasets",
        "description": "Profiles built from the synthetic dataset fixtures.",
        "datasets": {
            "ndbc": "../data/ndbc_46001_2022.txt",
            "currents": "../data/currents_cook_inlet_2022.csv",
            "currents_unit": "knots",
            "pvwatts": "../data/pvwatts_kodiak_4kw.csv",
            "wec_matrix": "../data/wec_matrix_750kw.csv",
            "wec_rated_power_kw": 750,
        },
        "profiles": {"load": load},
    })
    zero = {r: 0 for r in ("precommissioning", "capital", "om_per_year", "decommissioning")}
    write("toy_t2.json", {
        "region": "toy_t2",
        "description": "Two-hour toy: flat 100 kW load, one 60 kW/unit resource, no storage.",
        "profiles": {"load": [100, 100], "owt": [60, 60]},
        "costs": {"owt": dict(zero, precommissioning=10), "wec": zero, "tec": zero, "fpv": zero, "bess": zero},
        "bounds": {"wec": 0, "tec": 0, "owt": 5, "fpv": 0},
        "bess": {"enabled": False},
    })
    write("zero_load.json", {
        "region": "zero_load",
        "profiles": {"load": [0.0] * 24, **alaska_profiles()},
    })
    night = [800.0 if (h < 6 or h >= 20) else 200.0 for h in range(24)]
    write("fpv_night_infeasible.json", {
        "region": "fpv_night",
        "description": "Night-heavy load served by floating PV only, storage disabled.",
        "profiles": {"load": night, "fpv": alaska_profiles()["fpv"]},
        "bess": {"enabled": False},
    })
    write("oracle_t4.json", {
        "region": "oracle_t4",
        "description": "Four-hour storage case small enough for exhaustive enumeration.",
        "profiles": {"load": [120, 90, 150, 110], "owt": [70, 20, 55, 90], "tec": [30, 45, 10, 25]},
        "costs": {"owt": dict(zero, capital=1000), "tec": dict(zero, capital=700),
                  "wec": zero, "fpv": zero, "bess": dict(zero, capital=3)},
        "bounds": {"wec": 0, "tec": 4, "owt": 4, "fpv": 0},
    })


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    SCEN.mkdir(exist_ok=True)
    ndbc()
    currents()
    pvwatts()
    wec_matrix()
    scenarios()
