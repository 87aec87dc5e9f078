#! /usr/bin/env python
# -*- mode: python; coding: utf-8 -*-
# Licensed under the 2-clause BSD license.

from setuptools import setup
import glob

setup_args = {
    'name': "cmnerds",
    'description': "Exact and numerical checks for Calogero-Moser systems and rational Cherednik algebras",
    'license': "BSD",
    'version': '0.1.0',
    'scripts': glob.glob('scripts/*'),
    'packages': ['cmnerds'],
    'install_requires': ['numpy', 'scipy', 'pyyaml', 'tabulate', 'pandas', 'sympy'],
    'extras_require': {'test': ['pytest', 'hypothesis']},
}

if __name__ == '__main__':
    setup(**setup_args)
