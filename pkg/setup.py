from setuptools import find_packages, setup


with open('README.md') as f:
  long_description = f.read()

setup(
  name='hvlab',
  version='0.1.0',
  description='Numerical laboratory for the Volterra operator T_g on '
              'spaces of analytic functions in the unit disk',
  long_description=long_description,
  long_description_content_type='text/markdown',
  license='MIT',
  packages=find_packages(exclude=['tests']),
  python_requires='>=3.8',
  install_requires=[
    'numpy>=1.21',
    'scipy>=1.7',
    'pandas>=1.5',
    'plotly>=5.0',
  ],
  extras_require={
    'svg': ['kaleido'],
    'test': ['pytest>=7.0', 'hypothesis>=6.0'],
  },
  entry_points={
    'console_scripts': ['hvlab=hvlab.cli:main'],
  },
)
