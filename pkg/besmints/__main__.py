from besmints.cli import main

main()
