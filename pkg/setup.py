from setuptools import setup, find_packages

setup(
    name='factorlab',
    version='0.1.0',
    description='factorlab: bounded checks of factorization properties of lambda-calculus extensions',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    include_package_data=True,
    package_data={
        'factorlab': ['report_schema.yaml', 'suite/*.yaml', 'calculi/*.yaml', 'calculi/defs/*.yaml'],
    },
    install_requires=[
        'click',
        'omegaconf',
        'pyyaml',
        'jinja2',
        'numpy',
        'jsonschema',
    ],
    entry_points={
        'console_scripts': [
            'factorlab=factorlab.cli:cli'
        ],
    },
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.11',
    ],
)
