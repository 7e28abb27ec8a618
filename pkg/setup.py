#! /usr/bin/env python

"""Setup file for elecmaps package."""

from setuptools import setup, find_packages
from os import path

here = path.abspath(path.dirname(__file__))
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
	long_description = f.read()

setup(name='elecmaps',
      version='0.1.0',
      description='Maps of ordinal elections of different sizes',
      long_description=long_description,
      long_description_content_type='text/markdown',
      license='MIT',
      classifiers=['License :: OSI Approved :: MIT License',
                   'Programming Language :: Python :: 3',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   'Topic :: Scientific/Engineering :: Mathematics'
                   ],
      keywords='elections voting social-choice preflib wasserstein mds',
      packages=find_packages(exclude=['tests']),
      install_requires=['numpy>=1.20',
                        'scipy>=1.6',
                        'POT>=0.8',
                        'matplotlib>=3.4'
                        ],
      extras_require={'test': ['pytest>=7']},
      python_requires='>=3.9',
      package_data={'elecmaps': ['config/*.py']},
      entry_points={'console_scripts': ['elecmaps=elecmaps.cli:main']}
      )
