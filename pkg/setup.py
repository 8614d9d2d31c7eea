#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Setup script for witnesspy
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="witnesspy",
    version="0.1.0",
    author="bpmconsultag",
    description="Sudden changes of quantum discord in decohering two-qubit states",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["witnesspy", "witnesspy.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.21.0",
        "scipy>=1.7.0",
        "PyYAML>=5.4.1",
    ],
    entry_points={
        "console_scripts": ["witnesspy = witnesspy.cli:main"],
    },
)
