from setuptools import setup, find_packages
from os import path

here = path.abspath(path.dirname(__file__))

with open(here + "/README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="hkspread",
    version="0.0.1",
    description="Hilbert-Kunz lengths and *-spread estimates in prime characteristic",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Environment :: Console",
        "Operating System :: OS Independent",
        "License :: OSI Approved :: BSD License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude="tests"),
    python_requires=">=3.8, <4",
    install_requires=["openpyxl"],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["hkspread=hkspread.cli:main"]},
)
