"""Neither bound wins everywhere: sweep rho and find the crossover.

With equal radii on both axes and N = 10, the b bound is sharper for
small rho and the a bound for large rho.  crossover_scan samples a
log-uniform grid, then bisects each winner flip to six decimal places.

The same data is available from the command line:

    chebbound sweep --n 10 --d 2 --rho-range 1.1:20 --steps 200 --csv scan.csv
"""

from chebbound import crossover_scan
from chebbound.verification import scan_to_csv


def main() -> None:
    records = crossover_scan(n=10, d=2, rho_lo=1.1, rho_hi=20.0, steps=200)

    grid = [r for r in records if r.winner != "CROSSOVER"]
    crossings = [r for r in records if r.winner == "CROSSOVER"]

    print("rho        a            b            winner")
    for r in grid[::20]:
        print(f"{r.rho:<9.4f}  {r.a:<11.4e}  {r.b:<11.4e}  {r.winner}")

    print()
    for r in crossings:
        print(f"bounds intersect at rho = {r.rho:.6f} (a = b = {r.a:.6e})")

    with open("crossover_scan.csv", "w", encoding="utf-8") as fh:
        fh.write(scan_to_csv(records))
    print(f"\nwrote {len(records)} rows to crossover_scan.csv (columns rho,a,b,winner)")


if __name__ == "__main__":
    main()
