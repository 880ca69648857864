import os
from setuptools import setup, find_packages

with open('requirements.txt') as f:
    required = f.read().splitlines()

with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

# Function to read the version from __version__.py
def get_version(rel_path):
    here = os.path.abspath(os.path.dirname(__file__))
    with open(os.path.join(here, rel_path), 'r') as fp:
        for line in fp:
            if line.startswith('__version__'):
                # Executes the line of code and retrieves the __version__ variable
                ns = {}
                exec(line, ns)
                return ns['__version__']
    raise RuntimeError('Unable to find version string.')

version = get_version('jamscope/__version__.py')
print("building version", version)
setup(
    name='jamscope',
    version=version,
    description='Simulate vehicular RF jamming scenarios and classify jamming against interference.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests', 'tests.*']),
    install_requires=required,
    extras_require={
        'dev': ['pytest~=7.4'],
    },
    entry_points={
        'console_scripts': [
            'js-init=jamscope:main',
            'js-list-cases=jamscope:list_cases',
            'js-simulate=jamscope.scripts.simulate:main',
            'js-evaluate=jamscope.scripts.evaluate:main',
            'js-report=jamscope.scripts.report:main',
        ],
    },
    include_package_data=True,
    package_data={
        'jamscope.models': ['classifiers.json', 'cases.json'],
    },
)
