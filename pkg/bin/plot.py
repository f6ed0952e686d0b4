"""
Plot the CSV written by `runBench.py analyze`.

Examples:
    python runBench.py analyze fairness --disks 2..10 --out fairness.csv
    python plot.py --input fairness.csv --kind fairness

    python runBench.py analyze diameter --family ipn --pegs 4 --disks 3..9 --out ipn.csv
    python plot.py --input ipn.csv --kind diameter
"""
from __future__ import print_function

# =========================== imports =========================================

# standard
import os
import argparse
import csv

# third party
import numpy as np
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

# ============================ defines ========================================

KINDS = ['fairness', 'diameter', 'mass']

# fairness: limits of the two removal strategies on H_3^n
LIMITS = [
    (5.0 / 9, 'two-state limit 5/9'),
    (1.0 / 3, 'three-state limit 1/3'),
]

# ============================ main ===========================================

def main(options):

    rows = read_rows(options.input)
    if not rows:
        print("{0} has no rows.".format(options.input))
        return

    output_folder = options.outputfolder or os.path.dirname(os.path.abspath(options.input))
    output_name   = os.path.splitext(os.path.basename(options.input))[0]

    if   options.kind == 'fairness':
        plot_fairness(rows, options)
    elif options.kind == 'diameter':
        plot_diameter(rows, options)
    else:
        plot_mass(rows, options)

    savefig(output_folder, output_name, options.format)
    plt.clf()
    print("Plot is saved in the {0} folder.".format(output_folder))

# =========================== helpers =========================================

def read_rows(path):
    with open(path, 'r') as f:
        return list(csv.DictReader(f))

def plot_fairness(rows, options):
    n     = np.array([int(row['n']) for row in rows])
    value = np.array([float(row['probability']) for row in rows])
    plt.plot(n, value, marker='o', label='connection probability')
    for (limit, label) in LIMITS:
        plt.axhline(limit, linestyle='--', linewidth=0.8, color='grey')
        plt.text(n.min(), limit, label, fontsize=8, verticalalignment='bottom')
    plt.axhline(0.5, linestyle=':', color='red', label='fairness threshold 1/2')
    plt.xlabel(options.xlabel or 'disks n')
    plt.ylabel(options.ylabel or 'P(two uniform vertices stay connected)')
    plt.legend()

def plot_diameter(rows, options):
    n        = np.array([int(row['n']) for row in rows])
    diameter = np.array([int(row['diameter']) for row in rows])
    plt.plot(n, diameter, marker='o', label=rows[0]['family'])
    if options.kappa:
        plt.plot(n, options.kappa * n, linestyle='--', label='{0}n'.format(options.kappa))
    plt.xlabel(options.xlabel or 'n')
    plt.ylabel(options.ylabel or 'diameter')
    plt.legend()

def plot_mass(rows, options):
    n    = np.array([int(row['n']) for row in rows])
    mass = np.array([float(row['mass']) for row in rows])
    plt.plot(n, mass, marker='.', label='central mass, beta={0}'.format(rows[0]['beta']))
    plt.axhline(float(rows[0]['beta']), linestyle='--', color='grey')
    plt.xlabel(options.xlabel or 'n')
    plt.ylabel(options.ylabel or 'fraction of the cube')
    plt.legend()

def savefig(output_folder, output_name, output_format="png"):
    # check if output folder exists and create it if not
    if not os.path.isdir(output_folder):
        os.makedirs(output_folder)

    # save the figure
    plt.savefig(
        os.path.join(output_folder, output_name + "." + output_format),
        bbox_inches     = 'tight',
        pad_inches      = 0,
        format          = output_format,
    )

def parse_args(argv=None):
    # parse options
    parser = argparse.ArgumentParser()
    parser.add_argument(
        '--input',
        help       = 'CSV written by runBench.py analyze.',
        required   = True,
    )
    parser.add_argument(
        '--kind',
        help       = 'What the CSV holds.',
        choices    = KINDS,
        default    = 'fairness',
    )
    parser.add_argument(
        '--outputfolder',
        help       = 'Where to save the plot, next to the CSV by default.',
        default    = None,
    )
    parser.add_argument(
        '--format',
        help       = 'Image format.',
        default    = 'png',
    )
    parser.add_argument(
        '--kappa',
        help       = 'Draw the line kappa*n on diameter plots.',
        type       = int,
        default    = None,
    )
    parser.add_argument(
        '--xlabel',
        help       = 'The x-axis label',
        type       = str,
        default    = None,
    )
    parser.add_argument(
        '--ylabel',
        help       = 'The y-axis label',
        type       = str,
        default    = None,
    )
    return parser.parse_args(argv)

if __name__ == '__main__':

    options = parse_args()

    main(options)
