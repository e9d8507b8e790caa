#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evomlp/data.hpp"
#include "evomlp/error.hpp"
#include "evomlp/synthetic.hpp"

using namespace evomlp;

namespace {

RawTable table_from(const std::string& text, const std::string& label = "label") {
    std::istringstream in(text);
    return parse_csv(in, label);
}

}  // namespace

TEST_CASE("load a small CSV") {
    const auto t = table_from("a,b,label\n1,2,x\n3,4,y\n5,6,x\n");
    CHECK(t.rows() == 3);
    CHECK(t.features() == 2);
    CHECK(t.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(t.labels == std::vector<std::string>{"x", "y", "x"});
    CHECK(*t.cells[2][1] == 6.0);
}

TEST_CASE("label column may sit anywhere and rows may end in CRLF") {
    const auto t = table_from("label,a\r\ncat,1.5\r\ndog,-2e-1\r\n");
    CHECK(t.features() == 1);
    CHECK(*t.cells[1][0] == -0.2);
    CHECK(t.labels[1] == "dog");
}

TEST_CASE("quoted fields") {
    const auto t = table_from("\"a\",label\n\"1\",\"big, \"\"red\"\"\"\n2,small\n");
    CHECK(t.labels[0] == "big, \"red\"");
    CHECK(*t.cells[0][0] == 1.0);
}

TEST_CASE("empty cell becomes missing") {
    const auto t = table_from("a,b,label\n1,2,x\n,4,y\n5,6,x\n");
    CHECK(t.missing_count() == 1);
    CHECK_FALSE(t.cells[1][0].has_value());
}

TEST_CASE("CSV errors") {
    SUBCASE("ragged row names the row") {
        try {
            table_from("a,b,label\n1,2,x\n3,y\n");
            FAIL("expected an error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        }
    }
    SUBCASE("missing label column") {
        CHECK_THROWS_AS(table_from("a,b,class\n1,2,x\n", "label"), ValidationError);
    }
    SUBCASE("non-numeric feature names row and column") {
        try {
            table_from("a,b,label\n1,2,x\n3,abc,y\n");
            FAIL("expected an error");
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("row 2") != std::string::npos);
            CHECK(msg.find("'b'") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv("/nonexistent/data.csv", "label"), IoError);
    }
}

TEST_CASE("mean imputation") {
    const auto ds = preprocess(table_from("a,label\n1,x\n,y\n3,x\n"), {MissingPolicy::MeanImpute, TransformKind::None});
    CHECK(ds.features(0, 0) == 1.0);
    CHECK(ds.features(1, 0) == 2.0);
    CHECK(ds.features(2, 0) == 3.0);
}

TEST_CASE("median imputation") {
    const auto ds =
        preprocess(table_from("a,label\n1,x\n,y\n3,x\n10,y\n"), {MissingPolicy::MedianImpute, TransformKind::None});
    CHECK(ds.features(1, 0) == 3.0);
}

TEST_CASE("drop-row removes incomplete rows and leaves the rest untouched") {
    const auto t = table_from("a,b,label\n1.25,2,x\n,4,y\n5,6.5,y\n7,,x\n");
    const auto ds = preprocess(t, {});
    REQUIRE(ds.rows() == 2);
    CHECK(ds.features(0, 0) == 1.25);
    CHECK(ds.features(0, 1) == 2.0);
    CHECK(ds.features(1, 0) == 5.0);
    CHECK(ds.features(1, 1) == 6.5);
}

TEST_CASE("min-max scaling to the unit interval") {
    const auto ds = preprocess(table_from("a,b,label\n0,3,x\n5,-1,y\n10,7,x\n"), {MissingPolicy::DropRow,
                                                                                 TransformKind::MinMaxToUnit});
    CHECK(ds.features(0, 0) == 0.0);
    CHECK(ds.features(1, 0) == 0.5);
    CHECK(ds.features(2, 0) == 1.0);
    CHECK(ds.features.minCoeff() == 0.0);
    CHECK(ds.features.maxCoeff() == 1.0);
    CHECK(ds.features.col(1).minCoeff() == 0.0);
    CHECK(ds.features.col(1).maxCoeff() == 1.0);
}

TEST_CASE("z-score of a constant column is an error naming it") {
    try {
        preprocess(table_from("flat,label\n2,x\n2,y\n2,x\n"), {MissingPolicy::DropRow, TransformKind::ZScore});
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("flat") != std::string::npos);
    }
}

TEST_CASE("z-score standardises") {
    const auto ds = preprocess(table_from("a,label\n0,x\n2,y\n4,x\n6,y\n"), {MissingPolicy::DropRow,
                                                                            TransformKind::ZScore});
    CHECK(std::abs(ds.features.col(0).mean()) < 1e-15);
    CHECK(ds.features.col(0).squaredNorm() / 4.0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("degenerate datasets") {
    CHECK_THROWS_AS(preprocess(table_from("a,label\n1,x\n2,x\n3,x\n"), {}), ValidationError);
    CHECK_THROWS_AS(preprocess(table_from("a,label\n1,x\n,y\n"), {}), ValidationError);
    CHECK_THROWS_AS(preprocess(table_from("a,label\n"), {}), ValidationError);
}

TEST_CASE("labels are encoded in first-appearance order and round-trip") {
    const auto t = table_from("a,label\n1,b\n2,a\n,c\n3,b\n4,c\n");
    const auto ds = preprocess(t, {});
    CHECK(ds.class_names == std::vector<std::string>{"b", "a", "c"});
    CHECK(ds.labels == std::vector<std::size_t>{0, 1, 0, 2});
    // Surviving rows are 0, 1, 3, 4.
    const std::size_t rows[] = {0, 1, 3, 4};
    for (std::size_t i = 0; i < ds.rows(); ++i)
        CHECK(ds.class_names[ds.labels[i]] == t.labels[rows[i]]);
}

TEST_CASE("apply_transform") {
    TransformParams none;
    Eigen::Vector2d v(1.5, -2);
    CHECK(apply_transform(none, v) == v);

    TransformParams mm{TransformKind::MinMaxToUnit, Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 10.0)};
    CHECK(apply_transform(mm, Eigen::VectorXd::Constant(1, 5.0))(0) == 0.5);

    TransformParams z{TransformKind::ZScore, Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Constant(1, 2.0)};
    CHECK(apply_transform(z, Eigen::VectorXd::Constant(1, 4.0))(0) == 1.0);

    CHECK_THROWS_AS(apply_transform(z, Eigen::VectorXd::Zero(2)), DimensionError);
}

TEST_CASE("preprocess is idempotent on clean data with drop-row and no transform") {
    const auto points = make_blobs(40, 3);
    const auto first = to_dataset(points);
    std::ostringstream csv;
    write_csv(csv, LabeledPoints{first.features, std::vector<int>(points.labels)});
    std::istringstream in(csv.str());
    const auto second = preprocess(parse_csv(in, "label"), {});
    CHECK((first.features.array() == second.features.array()).all());
    CHECK(first.labels == second.labels);
}

TEST_CASE("feature matrix for prediction") {
    const auto dir = std::filesystem::temp_directory_path() / "evomlp_test_data";
    std::filesystem::create_directories(dir);
    const auto path = dir / "features.csv";
    {
        std::ofstream out(path);
        out << "x1,label,x2\n1,a,2\n3,b,4\n";
    }
    const auto x = load_feature_matrix(path, std::string("label"));
    CHECK(x.rows() == 2);
    CHECK(x.cols() == 2);
    CHECK(x(1, 1) == 4.0);
    CHECK_THROWS_AS(load_feature_matrix(path), ValidationError);  // "a" is not numeric
    {
        std::ofstream out(path);
        out << "x1,x2\n";
    }
    CHECK(load_feature_matrix(path).rows() == 0);
}

TEST_CASE("synthetic XOR and blobs") {
    const auto x = make_xor(0, 1);
    REQUIRE(x.x.rows() == 4);
    CHECK(x.x(0, 0) == 0.0);
    CHECK(x.x(1, 1) == 1.0);
    CHECK(x.labels == std::vector<int>{0, 1, 1, 0});

    const auto j = make_xor(40, 1);
    CHECK(j.x.rows() == 40);
    CHECK(j.labels[5] == 1);
    CHECK(std::abs(j.x(5, 1) - 1.0) < 0.3);

    const auto b1 = make_blobs(200, 9), b2 = make_blobs(200, 9);
    CHECK((b1.x.array() == b2.x.array()).all());
    const auto c0 = b1.x.topRows(100).colwise().mean();
    const auto c1 = b1.x.bottomRows(100).colwise().mean();
    CHECK(std::count(b1.labels.begin(), b1.labels.end(), 0) == 100);
    CHECK(std::abs(c0(0) + 2.0) < 0.5);
    CHECK(std::abs(c0(1) + 2.0) < 0.5);
    CHECK(std::abs(c1(0) - 2.0) < 0.5);
    CHECK(std::abs(c1(1) - 2.0) < 0.5);
}
