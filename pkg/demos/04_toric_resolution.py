# Resolving |P(1,3,4,4)| by four stellar subdivisions.

from crepant_kit.toric import P1344_RESOLUTION_RAYS, is_crepant, is_smooth, singular_report, stellar_subdivide, wps_fan

sigma = wps_fan([1, 3, 4, 4])
for cone, idx in singular_report(sigma):
    print("singular:", sigma.cone_names(cone), "index", idx)

fan = sigma
for name, ray in P1344_RESOLUTION_RAYS:
    fan = stellar_subdivide(fan, ray, name)
    print(f"after {name}={ray}: {len(fan.cones)} cones, smooth={is_smooth(fan)[0]}")

ok, cert = is_crepant(sigma, fan)
print("crepant:", ok)
for name, c in cert.items():
    terms = " + ".join(f"{v}*{g}" for g, v in c["coefficients"].items())
    print(f"  {name} = {terms}")

# a ray off the height-one plane breaks crepancy
bad = stellar_subdivide(sigma, (0, -1, -2), "X")
print("(0,-1,-2) crepant:", is_crepant(sigma, bad)[0])
