# @copyright: 2024. All rights reserved.

from setuptools import setup, find_packages

with open("README.rst", encoding="utf-8") as readme_file:
    readme = readme_file.read()

with open("HISTORY.rst", encoding="utf-8") as history_file:
    history = history_file.read()

requirements = [requirement for requirement in open('requirements.txt', encoding="utf-8")]

setup(
    name='qclaw',
    description='Query-counted quantum search for claws, collisions and triangles',
    long_description= readme + "\n\n" + history ,
    long_description_content_type="text/x-rst",
    include_package_data=True,
    version='0.2.0',
    url='https://github.com/tactlabs/qclaw',
    author='Raja CSP Raman',
    author_email="info@tactii.com",
    license='MIT',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    packages=find_packages(include=["qclaw", "qclaw.*"]),
    install_requires=requirements,
    extras_require={
        'tests': ['pytest>=7', 'hypothesis>=6'],
    },
    entry_points={
        'console_scripts': [
            'qclaw=qclaw.cli:main'
        ]
    },
    python_requires=">=3.9",
    keywords="qclaw quantum-search claw element-distinctness triangle",
    zip_safe=False
)
