#!/usr/bin/env python
# -*- coding: utf-8 -*-
'''
Setup script for the wreath Macdonald toolkit
'''

from pathlib import Path

from setuptools import setup

HERE = Path(__file__).parent


def read_requirements():
    '''Dependencies from requirements.txt'''
    with open(HERE / 'requirements.txt', 'r', encoding='utf-8') as f:
        return [line.strip() for line in f if line.strip() and not line.startswith('#')]


setup(
    name='wreath-macdonald',
    version='1.0.0',
    description='Exact wreath Macdonald polynomials, difference operators and eigen-equation checks',
    long_description=(HERE / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    python_requires='>=3.8',
    py_modules=[
        'scalars', 'partitions', 'symfunc', 'polynomials', 'operators', 'linalg',
        'wreath_macdonald', 'macdonald', 'eigen', 'batch_processor', 'utils', 'run',
    ],
    install_requires=read_requirements(),
    entry_points={
        'console_scripts': [
            'wreath-macdonald = run:main',
        ],
    },
    data_files=[('.', ['config.json', 'acceptance_grid.json'])],
)
