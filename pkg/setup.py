#!/usr/bin/env python
# -*- coding: utf-8 -*-


"""Half-line Schrödinger heat kernels and their bounds

Compute perturbed Dirichlet heat kernels on the half-line and check kernel
inequalities numerically, from the command line or a python API."""


import setuptools


setuptools.setup(
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
    ],
    description=('\n'.join(__doc__.split('\n')[2:])),
    entry_points={
        'console_scripts': [
            'hlk=hlk.scripts.hlk_cli:main',
        ],
    },
    install_requires=[
        "docopt>=0.6.2",
        "numpy>=1.17",
        "scipy>=1.6",
    ],
    keywords="heat kernel schrodinger semigroup half-line verification",
    license="MIT License",
    long_description=__doc__.split('\n')[0],
    name="hlk",
    packages=setuptools.find_packages(),
    platforms=["OS Independent"],
    test_suite="nose.collector",
    version="0.1",
)
