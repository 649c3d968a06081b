import os

FIXTURES_DIRECTORY = os.path.abspath(os.path.join(os.path.dirname(__file__), "./fixtures"))
SQUARE_FILE = os.path.join(FIXTURES_DIRECTORY, "square.ideal")
KOSZUL_FILE = os.path.join(FIXTURES_DIRECTORY, "koszul.ideal")
POWERS_FILE = os.path.join(FIXTURES_DIRECTORY, "powers.ideal")
RUNNING_FILE = os.path.join(FIXTURES_DIRECTORY, "running.ideal")
BAD_POWERS_FILE = os.path.join(FIXTURES_DIRECTORY, "bad_powers.ideal")
PLEX_FILE = os.path.join(FIXTURES_DIRECTORY, "plex.ideal")
