#!/usr/bin/env python3
"""Writes the synthetic Eastern-Interconnection-like fixture into data/fixture/.

Sizing rules:
  - greenfield potential per region is twice the regional target
  - contaminated potential per region is below its target, about 70 GW in total
  - rooftop potential per region exceeds its target
Weather is a clear-sky year scaled by a deterministic cloudiness signal.
"""

import json
import math
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "fixture")

TARGETS_GW = {"ISO-NE": 12, "MISO": 92, "NYISO": 21, "PJM": 42, "SPP": 97, "Southeast": 189}
CONTAMINATED_GW = {"ISO-NE": 1.8, "MISO": 14.3, "NYISO": 3.3, "PJM": 6.5, "SPP": 15.0, "Southeast": 29.3}

# region -> [(county_fips, latitude, longitude, meteo_cell)]
COUNTIES = {
    "ISO-NE": [("25017", 42.4, -71.4, "ne"), ("33011", 42.9, -71.7, "ne")],
    "NYISO": [("36001", 42.6, -73.9, "ny"), ("36067", 43.0, -76.2, "ny")],
    "PJM": [("42043", 40.3, -76.8, "pjm_n"), ("51041", 37.4, -77.6, "pjm_s")],
    "MISO": [("17019", 40.1, -88.2, "miso_s"), ("27053", 45.0, -93.5, "miso_n")],
    "SPP": [("20173", 37.7, -97.5, "spp"), ("40109", 35.5, -97.4, "spp")],
    "Southeast": [("13121", 33.8, -84.4, "se_s"), ("37183", 35.8, -78.6, "se_n")],
}

CLEARNESS = {"ne": 0.60, "ny": 0.58, "pjm_n": 0.66, "pjm_s": 0.70, "miso_n": 0.66, "miso_s": 0.70,
             "spp": 0.78, "se_n": 0.74, "se_s": 0.76}

GREENFIELD = ["prime_agriculture", "forest", "shrubland", "range_grassland", "barren_marginal"]
CONTAMINATED = ["brownfield", "superfund", "landfill", "abandoned_mine", "rcra"]
ROOFTOP = ["roof_small", "roof_medium", "roof_large"]

DENSITY = {"forest": 40.0}
DEFAULT_DENSITY = 45.0

GREEN_SHARE = [0.30, 0.15, 0.15, 0.25, 0.15]
CONT_SHARE = [0.35, 0.10, 0.25, 0.15, 0.15]
ROOF_SHARE = [0.45, 0.35, 0.20]

SUITABILITY = {"roof_small": 0.35, "roof_medium": 0.60, "roof_large": 0.70}
# Rough panel area per m2 of roof before suitability, used only to size the fixture.
ROOF_PANEL_PER_M2 = {"roof_small": 0.50, "roof_medium": 0.45, "roof_large": 0.40}
EFFICIENCY = 0.15

ORIENTATIONS = [
    ("small", 0, 180, 0.10), ("small", 30, 180, 0.35), ("small", 30, 90, 0.20),
    ("small", 30, 270, 0.20), ("small", 25, 225, 0.15),
    ("medium", 0, 180, 0.60), ("medium", 20, 180, 0.20), ("medium", 20, 90, 0.10),
    ("medium", 20, 270, 0.10),
    ("large", 0, 180, 0.90), ("large", 10, 180, 0.10),
]


def declination(day):
    return 23.45 * math.sin(math.radians(360.0 * (284 + day) / 365.0))


def cos_zenith(lat, day, hour):
    d = math.radians(declination(day))
    h = math.radians(15.0 * (hour - 12.0))
    p = math.radians(lat)
    return math.sin(p) * math.sin(d) + math.cos(p) * math.cos(d) * math.cos(h)


def weather_rows(cell, lat, phase):
    base = CLEARNESS[cell]
    for h in range(8760):
        day = h // 24 + 1
        hour = h % 24
        cz = cos_zenith(lat, day, hour)
        wave = math.sin(2 * math.pi * day / 5.3 + phase) * math.sin(2 * math.pi * day / 11.7 + 2 * phase)
        k = min(1.0, max(0.15, base + 0.3 * wave))
        season = -math.cos(2 * math.pi * (day - 15) / 365.0)
        tamb = 12.0 + (38.0 - lat) * 0.6 + 13.0 * season + 5.0 * math.sin(2 * math.pi * (hour - 9) / 24.0)
        if cz <= 0.0:
            ghi = dni = dhi = 0.0
        else:
            am = 1.0 / max(cz, 0.05)
            dni_clear = 1353.0 * 0.7 ** (am ** 0.678)
            dhi_clear = 0.12 * dni_clear * cz + 15.0 * cz
            dni = dni_clear * k * k
            dhi = dhi_clear + (1.0 - k) * 0.35 * dni_clear * cz
            ghi = dni * cz + dhi
        yield f"{cell},{h},{ghi:.2f},{dni:.2f},{dhi:.2f},{tamb:.2f}"


def region_code(region):
    return {"ISO-NE": "ne", "MISO": "mi", "NYISO": "ny", "PJM": "pj", "SPP": "sp", "Southeast": "se"}[region]


def tx(i):
    # Deterministic spread of transmission multipliers over [1.0, 2.8].
    return round(1.0 + ((i * 7919) % 19) / 10.0, 2)


def main():
    os.makedirs(os.path.join(OUT, "scenarios"), exist_ok=True)
    parcels = []
    n = 0
    for region, counties in COUNTIES.items():
        target_mw = TARGETS_GW[region] * 1000.0
        code = region_code(region)
        for c, cat in enumerate(GREENFIELD):
            for k, (fips, lat, lon, cell) in enumerate(counties):
                mw = 2.0 * target_mw * GREEN_SHARE[c] * (0.55 if k == 0 else 0.45)
                area = mw / DENSITY.get(cat, DEFAULT_DENSITY) * 1e6
                n += 1
                parcels.append((f"{code}-{cat}-{k + 1}", fips, region, cat, area, 1.0 + (n % 7), 0, 0, tx(n),
                                lat + 0.1 * k, lon, cell))
        for c, cat in enumerate(CONTAMINATED):
            fips, lat, lon, cell = counties[c % 2]
            mw = CONTAMINATED_GW[region] * 1000.0 * CONT_SHARE[c]
            area = mw / DENSITY.get(cat, DEFAULT_DENSITY) * 1e6
            n += 1
            parcels.append((f"{code}-{cat}-1", fips, region, cat, area, 2.0 + (n % 5), 0, 0, tx(n), lat, lon, cell))
        for c, cat in enumerate(ROOFTOP):
            fips, lat, lon, cell = counties[c % 2]
            mw = 1.25 * target_mw * ROOF_SHARE[c]
            area = mw * 1e6 / (SUITABILITY[cat] * ROOF_PANEL_PER_M2[cat] * EFFICIENCY * 1000.0)
            n += 1
            parcels.append((f"{code}-{cat}-1", fips, region, cat, area, 0.0, 0, 0, 1.0, lat, lon, cell))
    # Screened out: steep, protected, buffer conflict, and one below the minimum project scale.
    parcels.append(("pj-forest-steep", "42043", "PJM", "forest", 5.0e7, 18.5, 0, 0, 1.2, 40.3, -76.8, "pjm_n"))
    parcels.append(("sp-shrubland-protected", "20173", "SPP", "shrubland", 8.0e7, 2.0, 1, 0, 1.1, 37.7, -97.5, "spp"))
    parcels.append(("mi-range_grassland-buffer", "17019", "MISO", "range_grassland", 6.0e7, 3.0, 0, 1, 1.3, 40.1,
                    -88.2, "miso_s"))
    parcels.append(("ne-brownfield-tiny", "25017", "ISO-NE", "brownfield", 1.5e4, 1.0, 0, 0, 1.0, 42.4, -71.4, "ne"))

    with open(os.path.join(OUT, "parcels.csv"), "w", newline="\n") as f:
        f.write("id,county_fips,region,category,usable_area_m2,mean_slope_deg,protected,buffer_conflict,"
                "tx_multiplier,latitude,longitude,meteo_cell\n")
        for p in parcels:
            f.write(f"{p[0]},{p[1]},{p[2]},{p[3]},{p[4]:.1f},{p[5]:.1f},{p[6]},{p[7]},{p[8]},{p[9]:.2f},"
                    f"{p[10]:.2f},{p[11]}\n")

    cells = {}
    for counties in COUNTIES.values():
        for _, lat, _, cell in counties:
            cells.setdefault(cell, lat)
    with open(os.path.join(OUT, "meteo.csv"), "w", newline="\n") as f:
        f.write("meteo_cell,hour_index,ghi_wm2,dni_wm2,dhi_wm2,tamb_c\n")
        for i, cell in enumerate(sorted(cells)):
            for row in weather_rows(cell, cells[cell], 0.7 * i):
                f.write(row + "\n")

    with open(os.path.join(OUT, "density.csv"), "w", newline="\n") as f:
        f.write("category,mw_per_km2\ndefault,45\nforest,40\n")

    divisions = ["new_england", "middle_atlantic", "south_atlantic", "east_north_central", "west_north_central",
                 "west_south_central"]
    with open(os.path.join(OUT, "suitability.csv"), "w", newline="\n") as f:
        f.write("locale,census_division,size_class,fraction\n")
        for cls, frac in (("small", 0.35), ("medium", 0.60), ("large", 0.70)):
            f.write(f"*,*,{cls},{frac}\n")
        for d in divisions:
            f.write(f"urban,{d},small,0.30\n")

    with open(os.path.join(OUT, "roof_locales.csv"), "w", newline="\n") as f:
        f.write("parcel_id,locale\n")
        for p in parcels:
            if p[3] == "roof_small" and p[2] in ("ISO-NE", "NYISO", "PJM"):
                f.write(f"{p[0]},urban\n")

    with open(os.path.join(OUT, "orientations.csv"), "w", newline="\n") as f:
        f.write("size_class,tilt_deg,azimuth_deg,weight\n")
        for cls, tilt, az, w in ORIENTATIONS:
            f.write(f"{cls},{tilt},{az},{w}\n")

    costs = {
        "capex_usd_per_kw.utility": 1000,
        "capex_usd_per_kw.commercial_roof": 1700,
        "capex_usd_per_kw.residential_roof": 2100,
        "fom_usd_per_kw_yr.utility": 20,
        "fom_usd_per_kw_yr.commercial_roof": 25,
        "fom_usd_per_kw_yr.residential_roof": 30,
        "brownfield_premium": 1.3,
        "bin_multiplier.5-20 MW": 1.15,
        "bin_multiplier.20-50 MW": 1.08,
        "bin_multiplier.50-100 MW": 1.03,
        "bin_multiplier.100-700 MW": 1.00,
        "national_avg_lcot_usd_per_mwh": 4,
        "discount_rate": 0.05,
        "lifetime_years": 30,
    }
    dump(costs, "costs.json")
    dump({"total_target_mw": 453000, "regions": {r: gw * 1000 for r, gw in TARGETS_GW.items()}}, "targets.json")

    scenario_files = []
    for mode in ("ei_wide", "regional"):
        for name, body in (
            ("min_lcoe", {"scheme": "min_lcoe"}),
            ("contaminated_then_greenfield", {"scheme": "contaminated_first", "fallback": "greenfield"}),
            ("contaminated_then_rooftop", {"scheme": "contaminated_first", "fallback": "rooftop"}),
            ("greenfield_first", {"scheme": "greenfield_first"}),
            ("rooftop_first", {"scheme": "rooftop_first"}),
        ):
            file = f"scenarios/{name}_{mode}.json"
            dump({"name": f"{name}_{mode}", **body, "mode": mode}, file)
            scenario_files.append(file)
    dump({"name": "contaminated_only_strict", "scheme": "contaminated_first", "mode": "regional", "strict": True},
         "scenarios/contaminated_only_strict.json")

    run = {
        "parcels": "parcels.csv",
        "meteo": "meteo.csv",
        "density": "density.csv",
        "suitability": "suitability.csv",
        "orientations": "orientations.csv",
        "costs": "costs.json",
        "targets": "targets.json",
        "roof_locales": "roof_locales.csv",
        "scenarios": scenario_files,
        "noct_c": 45,
        "temp_coeff_per_c": -0.0037,
        "system_loss": 0.14,
        "albedo": 0.2,
        "rotation_limit_deg": 60,
        "max_slope_deg": 10,
        "exclude_protected": True,
        "exclude_buffer_conflicts": True,
        "min_project_capacity_mw": 1,
        "module_efficiency": 0.15,
        "random_free": True,
    }
    dump(run, "run.json")
    dump({**run, "scenarios": ["scenarios/contaminated_only_strict.json"]}, "run_strict.json")
    print(f"wrote {len(parcels)} parcels and {len(cells)} meteo cells to {os.path.normpath(OUT)}", file=sys.stderr)


def dump(obj, name):
    with open(os.path.join(OUT, name), "w", newline="\n") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
