# planelie/__main__.py
from planelie.main import cli

if __name__ == "__main__":
    cli(prog_name="planelie")
