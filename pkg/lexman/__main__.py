from lexman.cli import main

main()
