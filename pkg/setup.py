from setuptools import setup, find_packages

with open('requirements.txt') as rf:
    requirements = rf.readlines()

with open('README.md') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read().replace('.. :changelog:', '')

setup(
    name='dirichletlib',
    version="0.1.0",
    description='Value distribution toolkit for generalized Dirichlet series and meromorphic functions',
    long_description=readme + '\n\n' + history,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=('tests', 'tests.*')),
    license="http://www.apache.org/licenses/LICENSE-2.0",
    install_requires=requirements,
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['dirichletlib=dirichletlib.cli:main'],
    },
    python_requires='>=3.7',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
