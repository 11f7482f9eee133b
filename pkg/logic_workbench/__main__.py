from logic_workbench.cli import main

main()
