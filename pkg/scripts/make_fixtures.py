"""Write the reference automata to data/*.dra."""

from pathlib import Path

from hyperdra.fixtures import ALL
from hyperdra.textformat import dump

OUT = Path(__file__).resolve().parent.parent / "data"


def main():
    OUT.mkdir(exist_ok=True)
    for name, build in ALL.items():
        path = OUT / f"{name}.dra"
        dump(build(), path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
