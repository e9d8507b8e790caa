// Multilayer-perceptron classifier generated by evomlp. Do not edit.
// algorithm: pso, seed: 42, training fitness: 0.9375, generations: 17
// topology: 2 -> [3] -> 2, activation: tanh
// Call with raw feature values; the fitted input transform (minmax) is applied before the forward pass.
// scores(features) returns one value per class; predict(features) returns the class name.

public final class Classifier {
    private Classifier() {}

    public static final String[] CLASSES = {"negative", "say \"yes\"\\"};

    private static final int[] LAYER_SIZES = {2, 3, 2};
    // 0: none, 1: (x - first) / (second - first), 2: (x - first) / second
    private static final int TRANSFORM = 1;
    private static final double[] TRANSFORM_FIRST = {-3, 0};
    private static final double[] TRANSFORM_SECOND = {3, 10};

    // Per layer, each node's incoming weights followed by its bias.
    private static final double[][] LAYERS = {
        {
            0.5, -1.25, 0.1,
            2, 0.75, -0.3,
            -1.5, 1, 0,
        },
        {
            1.125, -0.5, 0.25, 0.05,
            -2, 1.5, 0.875, -0.2,
        },
    };

    private static double activate(double x) {
        return Math.tanh(x);
    }

    private static double transform(int i, double x) {
        if (TRANSFORM == 1) {
            double span = TRANSFORM_SECOND[i] - TRANSFORM_FIRST[i];
            return span > 0.0 ? (x - TRANSFORM_FIRST[i]) / span : 0.0;
        }
        if (TRANSFORM == 2) {
            return (x - TRANSFORM_FIRST[i]) / TRANSFORM_SECOND[i];
        }
        return x;
    }

    public static double[] scores(double[] features) {
        if (features.length != LAYER_SIZES[0]) {
            throw new IllegalArgumentException(
                "expected " + LAYER_SIZES[0] + " features, got " + features.length);
        }
        double[] a = new double[features.length];
        for (int i = 0; i < a.length; i++) {
            a[i] = transform(i, features[i]);
        }
        for (int l = 0; l < LAYERS.length; l++) {
            int nIn = LAYER_SIZES[l];
            int nOut = LAYER_SIZES[l + 1];
            double[] w = LAYERS[l];
            double[] out = new double[nOut];
            for (int j = 0; j < nOut; j++) {
                int row = j * (nIn + 1);
                double s = 0.0;
                for (int i = 0; i < nIn; i++) {
                    s += w[row + i] * a[i];
                }
                out[j] = activate(s + w[row + nIn]);
            }
            a = out;
        }
        return a;
    }

    public static String predict(double[] features) {
        double[] s = scores(features);
        int best = 0;
        for (int k = 1; k < s.length; k++) {
            if (s[k] > s[best]) {
                best = k;
            }
        }
        return CLASSES[best];
    }
}
