"""
Driving the command line tool
=============================

Every subcommand is available as ``copson <cmd>`` (or
``python -m copson <cmd>``).  Here we call the entry point in-process.
"""

from copson.cli import main

main(["certify", "--family", "powerdiff:2", "--L", "1/2", "--p", "1/16", "--N", "10000"])
main(["scan", "--L-grid", "1/2:2:4", "--p-grid", "0:1/3:4"])
main(["probe", "--family", "unit", "--p", "0.25", "--N", "100,1000"])
main(["aux", "--fn", "v", "--L", "0.5", "--p", "0.0625", "--grid", "1000"])
