#!/usr/bin/env python3
"""
hypwave package setup
"""
from setuptools import setup, find_packages

setup(
    name="hypwave",
    version="0.1.0",
    description="Spherical analysis, wave propagators and local Hardy space atoms on rank-one symmetric spaces",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["run_hypwave"],
    install_requires=[
        "numpy>=1.23.5",
        "scipy>=1.10.0",
        "pandas>=1.5.2",
        "pydantic>=2.0",
        "python-dotenv>=0.21.0",
        "colorama>=0.4.6",
        "tabulate>=0.9.0",
    ],
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "hypwave=run_hypwave:main",
        ],
    },
)
