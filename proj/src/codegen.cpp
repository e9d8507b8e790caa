#include "evomlp/codegen.hpp"

#include <cstdio>
#include <sstream>

#include "evomlp/error.hpp"
#include "evomlp/format.hpp"

namespace evomlp {

std::string_view to_string(Target t) {
    switch (t) {
    case Target::Python:
        return "python";
    case Target::Java:
        return "java";
    case Target::JavaScript:
        return "javascript";
    }
    return "unknown";
}

Target parse_target(std::string_view name) {
    for (auto t : {Target::Python, Target::Java, Target::JavaScript})
        if (name == to_string(t))
            return t;
    throw ValidationError("unsupported language '" + std::string(name) +
                          "'; supported languages: python, java, javascript");
}

std::string default_file_name(Target t) {
    switch (t) {
    case Target::Python:
        return "classifier.py";
    case Target::Java:
        return "Classifier.java";
    case Target::JavaScript:
        return "classifier.js";
    }
    return "classifier.txt";
}

namespace {

// Double-quoted literal valid in Python, Java and JavaScript. Only control
// characters other than \n, \r, \t get \u escapes, which keeps Java's early
// unicode-escape processing harmless.
std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        switch (ch) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (c < 0x20 || c == 0x7f) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    out += '"';
    return out;
}

// Comment text on one line; line breaks would end the comment early.
std::string comment_safe(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c == '\n' || c == '\r')
            c = ' ';
    return out;
}

std::string join_reals(const Eigen::Ref<const Eigen::VectorXd>& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += format_real(v(i));
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i)
            out += ", ";
        out += quote(names[i]);
    }
    return out;
}

std::string layer_sizes_text(const Topology& t) {
    std::string out = std::to_string(t.input_dim) + " -> [";
    for (std::size_t i = 0; i < t.hidden_layers.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(t.hidden_layers[i]);
    }
    return out + "] -> " + std::to_string(t.output_dim);
}

int transform_code(TransformKind k) {
    switch (k) {
    case TransformKind::None:
        return 0;
    case TransformKind::MinMaxToUnit:
        return 1;
    case TransformKind::ZScore:
        return 2;
    }
    return 0;
}

std::vector<std::string> header_lines(const TrainedModel& m) {
    const auto& md = m.metadata;
    return {
        "Multilayer-perceptron classifier generated by evomlp. Do not edit.",
        "algorithm: " + comment_safe(md.algorithm) + ", seed: " + std::to_string(md.seed) +
            ", training fitness: " + format_real(md.fitness) + ", generations: " + std::to_string(md.generations),
        "topology: " + layer_sizes_text(m.topology) + ", activation: " + std::string(to_string(m.topology.activation)),
        "Call with raw feature values; the fitted input transform (" + std::string(to_string(m.transform.kind)) +
            ") is applied before the forward pass.",
        "scores(features) returns one value per class; predict(features) returns the class name.",
    };
}

// Per-layer weight rows, one row per node: incoming weights then bias.
template <typename RowFn>
void for_each_layer_row(const TrainedModel& m, RowFn&& row_fn) {
    for (std::size_t l = 0; l < m.topology.num_layers(); ++l) {
        const auto block = layer_block(m.topology, m.genome, l);
        for (Eigen::Index j = 0; j < block.rows(); ++j)
            row_fn(l, j, block.rows(), Eigen::VectorXd(block.row(j).transpose()));
    }
}

Eigen::VectorXd transform_first(const TrainedModel& m) {
    return m.transform.kind == TransformKind::None ? Eigen::VectorXd() : m.transform.first;
}

Eigen::VectorXd transform_second(const TrainedModel& m) {
    return m.transform.kind == TransformKind::None ? Eigen::VectorXd() : m.transform.second;
}

std::string export_python(const TrainedModel& m) {
    std::ostringstream o;
    for (const auto& line : header_lines(m))
        o << "# " << line << "\n";
    o << "\n";
    o << "CLASSES = [" << join_strings(m.class_names) << "]\n\n";
    o << "_INPUT_DIM = " << m.topology.input_dim << "\n";
    o << "_ACTIVATION = " << quote(to_string(m.topology.activation)) << "\n";
    o << "# 0: none, 1: (x - first) / (second - first), 2: (x - first) / second\n";
    o << "_TRANSFORM = " << transform_code(m.transform.kind) << "\n";
    o << "_TRANSFORM_FIRST = [" << join_reals(transform_first(m)) << "]\n";
    o << "_TRANSFORM_SECOND = [" << join_reals(transform_second(m)) << "]\n\n";
    o << "# (inputs, outputs, weights): each node's incoming weights followed by its bias.\n";
    o << "_LAYERS = [\n";
    const auto sizes = m.topology.layer_sizes();
    for_each_layer_row(m, [&](std::size_t l, Eigen::Index j, Eigen::Index rows, const Eigen::VectorXd& row) {
        if (j == 0)
            o << "    (" << sizes[l] << ", " << sizes[l + 1] << ", [\n";
        o << "        " << join_reals(row) << ",\n";
        if (j + 1 == rows)
            o << "    ]),\n";
    });
    o << "]\n\n";
    o << R"PY(_E = 2.718281828459045


def _activate(x):
    if _ACTIVATION == "tanh":
        if x >= 0.0:
            t = _E ** (-2.0 * x)
            return (1.0 - t) / (1.0 + t)
        t = _E ** (2.0 * x)
        return (t - 1.0) / (t + 1.0)
    if _ACTIVATION == "logistic":
        if x >= 0.0:
            return 1.0 / (1.0 + _E ** (-x))
        t = _E ** x
        return t / (1.0 + t)
    return x


def _transform(i, x):
    if _TRANSFORM == 1:
        span = _TRANSFORM_SECOND[i] - _TRANSFORM_FIRST[i]
        return (x - _TRANSFORM_FIRST[i]) / span if span > 0.0 else 0.0
    if _TRANSFORM == 2:
        return (x - _TRANSFORM_FIRST[i]) / _TRANSFORM_SECOND[i]
    return x


def scores(features):
    if len(features) != _INPUT_DIM:
        raise ValueError("expected %d features, got %d" % (_INPUT_DIM, len(features)))
    a = [_transform(i, float(v)) for i, v in enumerate(features)]
    for n_in, n_out, w in _LAYERS:
        out = []
        for j in range(n_out):
            row = j * (n_in + 1)
            s = 0.0
            for i in range(n_in):
                s += w[row + i] * a[i]
            out.append(_activate(s + w[row + n_in]))
        a = out
    return a


def predict(features):
    s = scores(features)
    best = 0
    for k in range(1, len(s)):
        if s[k] > s[best]:
            best = k
    return CLASSES[best]
)PY";
    return o.str();
}

std::string export_java(const TrainedModel& m) {
    std::ostringstream o;
    for (const auto& line : header_lines(m))
        o << "// " << line << "\n";
    o << "\n";
    o << "public final class Classifier {\n";
    o << "    private Classifier() {}\n\n";
    o << "    public static final String[] CLASSES = {" << join_strings(m.class_names) << "};\n\n";
    o << "    private static final int[] LAYER_SIZES = {";
    const auto sizes = m.topology.layer_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i)
        o << (i ? ", " : "") << sizes[i];
    o << "};\n";
    o << "    // 0: none, 1: (x - first) / (second - first), 2: (x - first) / second\n";
    o << "    private static final int TRANSFORM = " << transform_code(m.transform.kind) << ";\n";
    o << "    private static final double[] TRANSFORM_FIRST = {" << join_reals(transform_first(m)) << "};\n";
    o << "    private static final double[] TRANSFORM_SECOND = {" << join_reals(transform_second(m)) << "};\n\n";
    o << "    // Per layer, each node's incoming weights followed by its bias.\n";
    o << "    private static final double[][] LAYERS = {\n";
    for_each_layer_row(m, [&](std::size_t, Eigen::Index j, Eigen::Index rows, const Eigen::VectorXd& row) {
        if (j == 0)
            o << "        {\n";
        o << "            " << join_reals(row) << ",\n";
        if (j + 1 == rows)
            o << "        },\n";
    });
    o << "    };\n\n";
    o << "    private static double activate(double x) {\n";
    switch (m.topology.activation) {
    case Activation::Tanh:
        o << "        return Math.tanh(x);\n";
        break;
    case Activation::Logistic:
        o << "        return 1.0 / (1.0 + Math.exp(-x));\n";
        break;
    case Activation::Linear:
        o << "        return x;\n";
        break;
    }
    o << "    }\n\n";
    o << R"JAVA(    private static double transform(int i, double x) {
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
)JAVA";
    return o.str();
}

std::string export_javascript(const TrainedModel& m) {
    std::ostringstream o;
    for (const auto& line : header_lines(m))
        o << "// " << line << "\n";
    o << "\n\"use strict\";\n\n";
    o << "const CLASSES = [" << join_strings(m.class_names) << "];\n\n";
    o << "const LAYER_SIZES = [";
    const auto sizes = m.topology.layer_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i)
        o << (i ? ", " : "") << sizes[i];
    o << "];\n";
    o << "// 0: none, 1: (x - first) / (second - first), 2: (x - first) / second\n";
    o << "const TRANSFORM = " << transform_code(m.transform.kind) << ";\n";
    o << "const TRANSFORM_FIRST = [" << join_reals(transform_first(m)) << "];\n";
    o << "const TRANSFORM_SECOND = [" << join_reals(transform_second(m)) << "];\n\n";
    o << "// Per layer, each node's incoming weights followed by its bias.\n";
    o << "const LAYERS = [\n";
    for_each_layer_row(m, [&](std::size_t, Eigen::Index j, Eigen::Index rows, const Eigen::VectorXd& row) {
        if (j == 0)
            o << "  [\n";
        o << "    " << join_reals(row) << ",\n";
        if (j + 1 == rows)
            o << "  ],\n";
    });
    o << "];\n\n";
    o << "function activate(x) {\n";
    switch (m.topology.activation) {
    case Activation::Tanh:
        o << "  return Math.tanh(x);\n";
        break;
    case Activation::Logistic:
        o << "  return 1 / (1 + Math.exp(-x));\n";
        break;
    case Activation::Linear:
        o << "  return x;\n";
        break;
    }
    o << "}\n\n";
    o << R"JS(function transform(i, x) {
  if (TRANSFORM === 1) {
    const span = TRANSFORM_SECOND[i] - TRANSFORM_FIRST[i];
    return span > 0 ? (x - TRANSFORM_FIRST[i]) / span : 0;
  }
  if (TRANSFORM === 2) {
    return (x - TRANSFORM_FIRST[i]) / TRANSFORM_SECOND[i];
  }
  return x;
}

function scores(features) {
  if (features.length !== LAYER_SIZES[0]) {
    throw new RangeError(`expected ${LAYER_SIZES[0]} features, got ${features.length}`);
  }
  let a = features.map((v, i) => transform(i, Number(v)));
  for (let l = 0; l < LAYERS.length; l++) {
    const nIn = LAYER_SIZES[l];
    const nOut = LAYER_SIZES[l + 1];
    const w = LAYERS[l];
    const out = new Array(nOut);
    for (let j = 0; j < nOut; j++) {
      const row = j * (nIn + 1);
      let s = 0;
      for (let i = 0; i < nIn; i++) {
        s += w[row + i] * a[i];
      }
      out[j] = activate(s + w[row + nIn]);
    }
    a = out;
  }
  return a;
}

function predict(features) {
  const s = scores(features);
  let best = 0;
  for (let k = 1; k < s.length; k++) {
    if (s[k] > s[best]) {
      best = k;
    }
  }
  return CLASSES[best];
}

module.exports = { CLASSES, scores, predict };
)JS";
    return o.str();
}

}  // namespace

std::string export_source(const TrainedModel& model, Target target) {
    model.validate();
    switch (target) {
    case Target::Python:
        return export_python(model);
    case Target::Java:
        return export_java(model);
    case Target::JavaScript:
        return export_javascript(model);
    }
    throw ValidationError("unsupported export target");
}

}  // namespace evomlp
