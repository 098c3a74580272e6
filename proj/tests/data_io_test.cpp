#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "blasso/data_io.hpp"
#include "blasso/errors.hpp"

namespace {

using namespace blasso;
namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blasso-data-io-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }

  fs::path dir_;
};

using LoadCsv = TempDir;

TEST_F(LoadCsv, ToyFileWithHeader) {
  const auto ds = load_csv(write("toy.csv", "y,a,b\n1,2,3\n4,5,6\n7,8,9\n"), std::string("y"));
  EXPECT_EQ(ds.n(), 3);
  EXPECT_EQ(ds.p(), 2);
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.y_raw, Eigen::Vector3d(1, 4, 7));
  EXPECT_EQ(ds.X_raw(2, 1), 9.0);
  EXPECT_EQ(ds.dropped_rows, 0u);
}

TEST_F(LoadCsv, ResponseByIndexAndPosition) {
  const auto path = write("toy.csv", "a,b,y\n1,2,3\n4,5,6\n");
  const auto ds = load_csv(path, std::size_t{2});
  EXPECT_EQ(ds.response_name, "y");
  EXPECT_EQ(ds.y_raw, Eigen::Vector2d(3, 6));
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"a", "b"}));
  const auto by_a = load_csv(path, std::string("a"));
  EXPECT_EQ(by_a.column_names, (std::vector<std::string>{"b", "y"}));
}

TEST_F(LoadCsv, HeaderlessNamesColumns) {
  const auto ds = load_csv(write("bare.csv", "1,2,3\n4,5,6\n"), std::size_t{0});
  EXPECT_EQ(ds.n(), 2);
  EXPECT_EQ(ds.response_name, "V1");
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"V2", "V3"}));
}

TEST_F(LoadCsv, MissingCellDropsRow) {
  const auto ds = load_csv(write("gap.csv", "y,a,b\n1,2,3\n4,,6\n7,8,NA\n10,11,12\n"), std::string("y"));
  EXPECT_EQ(ds.n(), 2);
  EXPECT_EQ(ds.dropped_rows, 2u);
  ASSERT_EQ(ds.warnings.size(), 1u);
  EXPECT_NE(ds.warnings[0].find("2 row"), std::string::npos);
  EXPECT_EQ(ds.y_raw, Eigen::Vector2d(1, 10));
}

TEST_F(LoadCsv, QuotingCrlfBomAndDelimiter) {
  const auto ds =
      load_csv(write("q.csv", "\xEF\xBB\xBF\"y\";\"x \"\"one\"\"\"\r\n1.5;-2e-3\r\n\r\n\"3\";4\r\n"), std::string("y"), ';');
  EXPECT_EQ(ds.n(), 2);
  EXPECT_EQ(ds.column_names[0], "x \"one\"");
  EXPECT_EQ(ds.X_raw(0, 0), -2e-3);
  EXPECT_EQ(ds.y_raw[1], 3.0);
}

TEST_F(LoadCsv, ErrorsCarryLocation) {
  try {
    load_csv(write("bad.csv", "y,a\n1,2\n3,abc\n"), std::string("y"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(load_csv(write("ragged.csv", "y,a\n1,2\n3\n"), std::string("y")), ParseError);
  EXPECT_THROW(load_csv(write("quote.csv", "y,a\n1,\"2\n"), std::string("y")), ParseError);
  EXPECT_THROW(load_csv(write("ok.csv", "y,a\n1,2\n"), std::string("z")), ConfigError);
  EXPECT_THROW(load_csv(write("ok2.csv", "y,a\n1,2\n"), std::size_t{5}), ConfigError);
  EXPECT_THROW(load_csv(dir_ / "absent.csv", std::string("y")), IoError);
}

TEST_F(LoadCsv, RoundTripIsBitExact) {
  Eigen::VectorXd beta(4);
  beta << 1.0 / 3.0, -2.0, 1e-300, 7.25;
  const auto original = synth_regression(50, 4, beta, 0.3, {DesignSpec::Kind::Correlated, 0.6}, 8);
  const auto path = dir_ / "round.csv";
  write_csv(path, original);
  const auto back = load_csv(path, std::string(original.response_name));
  EXPECT_EQ(back.column_names, original.column_names);
  EXPECT_EQ(back.y_raw, original.y_raw);
  EXPECT_EQ(back.X_raw, original.X_raw);
}

Dataset from_columns(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Dataset d;
  d.name = "manual";
  d.X_raw = X;
  d.y_raw = y;
  for (Eigen::Index j = 0; j < X.cols(); ++j) d.column_names.push_back("c" + std::to_string(j + 1));
  return d;
}

void expect_standardized(const RegressionData& r) {
  const double n = static_cast<double>(r.n());
  for (Eigen::Index j = 0; j < r.p(); ++j) {
    EXPECT_LT(std::abs(r.X.col(j).mean()), 1e-10);
    EXPECT_NEAR(std::sqrt(r.X.col(j).squaredNorm() / (n - 1.0)), 1.0, 1e-10);
  }
  EXPECT_LT(std::abs(r.y.mean()), 1e-10);
}

TEST(Standardize, SimpleColumn) {
  Eigen::MatrixXd X(3, 1);
  X << 1, 2, 3;
  const auto r = standardize(from_columns(X, Eigen::Vector3d(5, 6, 10)));
  EXPECT_NEAR(r.X(0, 0), -1.0, 1e-15);
  EXPECT_NEAR(r.X(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(r.X(2, 0), 1.0, 1e-15);
  EXPECT_NEAR(r.y[2], 3.0, 1e-14);
}

TEST(Standardize, InteractionCounts) {
  const auto ds = synth_regression(442, 10, Eigen::VectorXd::Zero(10), 1.0, {}, 3);
  const auto none = standardize(ds);
  const auto pairs = standardize(ds, InteractionRule::Pairs);
  const auto squares = standardize(ds, InteractionRule::PairsAndSquares);
  EXPECT_EQ(none.p(), 10);
  EXPECT_EQ(pairs.p(), 55);
  EXPECT_EQ(squares.p(), 65);
  EXPECT_EQ(pairs.column_names[10], "x1:x2");
  EXPECT_EQ(squares.column_names[10], "x1^2");
  for (const auto* r : {&none, &pairs, &squares}) expect_standardized(*r);
}

TEST(Standardize, InteractionIsProductOfStandardizedColumns) {
  const auto ds = synth_regression(30, 3, Eigen::VectorXd::Zero(3), 1.0, {}, 4);
  const auto base = standardize(ds);
  const auto pairs = standardize(ds, InteractionRule::Pairs);
  Eigen::VectorXd prod = base.X.col(0).cwiseProduct(base.X.col(2));
  prod.array() -= prod.mean();
  prod /= std::sqrt(prod.squaredNorm() / 29.0);
  const auto it = std::find(pairs.column_names.begin(), pairs.column_names.end(), "x1:x3");
  ASSERT_NE(it, pairs.column_names.end());
  EXPECT_LT((pairs.X.col(it - pairs.column_names.begin()) - prod).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Standardize, DropsConstantColumns) {
  Eigen::MatrixXd X(4, 3);
  X << 1, 5, 2, 2, 5, 1, 3, 5, 7, 4, 5, 0;
  std::vector<std::string> warnings;
  const auto r = standardize(from_columns(X, Eigen::Vector4d(1, 2, 3, 4)), InteractionRule::None, &warnings);
  EXPECT_EQ(r.p(), 2);
  EXPECT_EQ(r.column_names, (std::vector<std::string>{"c1", "c3"}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("c2"), std::string::npos);
}

TEST(Standardize, Errors) {
  EXPECT_THROW(standardize(from_columns(Eigen::MatrixXd::Ones(1, 2), Eigen::VectorXd::Ones(1))), InvalidParameter);
  EXPECT_THROW(standardize(from_columns(Eigen::MatrixXd::Ones(5, 2), Eigen::VectorXd::Ones(5))), InvalidParameter);
  EXPECT_EQ(parse_interaction_rule("pairs+squares"), InteractionRule::PairsAndSquares);
  EXPECT_STREQ(to_string(InteractionRule::Pairs), "pairs");
  EXPECT_THROW(parse_interaction_rule("cubes"), ConfigError);
}

TEST(Standardize, Idempotent) {
  const auto ds = synth_regression(80, 5, Eigen::VectorXd::Ones(5), 1.0, {DesignSpec::Kind::Correlated, 0.4}, 6);
  const auto once = standardize(ds);
  const auto twice = standardize(from_columns(once.X, once.y));
  EXPECT_LT((once.X - twice.X).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((once.y - twice.y).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Standardize, GramQuantitiesConsistent) {
  const auto r = standardize(synth_regression(120, 8, Eigen::VectorXd::Ones(8), 2.0, {}, 9), InteractionRule::Pairs);
  const Eigen::MatrixXd XtX = r.X.transpose() * r.X;
  EXPECT_LT((r.XtX - XtX).cwiseAbs().maxCoeff() / XtX.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((r.Xty - r.X.transpose() * r.y).cwiseAbs().maxCoeff(), 1e-10 * r.Xty.cwiseAbs().maxCoeff());
  EXPECT_NEAR(r.y_sq_norm, r.y.squaredNorm(), 1e-10 * r.y_sq_norm);
  EXPECT_LT((r.col_sq_norms - r.X.colwise().squaredNorm().transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Synth, Deterministic) {
  const Eigen::Vector3d beta(1, 0, -1);
  const auto a = synth_regression(40, 3, beta, 1.0, {}, 5);
  const auto b = synth_regression(40, 3, beta, 1.0, {}, 5);
  const auto c = synth_regression(40, 3, beta, 1.0, {}, 6);
  EXPECT_EQ(a.X_raw, b.X_raw);
  EXPECT_EQ(a.y_raw, b.y_raw);
  EXPECT_NE(a.y_raw, c.y_raw);
  EXPECT_EQ(a.name, "synthetic-iid");
}

TEST(Synth, NullModelVariance) {
  const int n = 20000;
  const auto ds = synth_regression(n, 2, Eigen::Vector2d::Zero(), 1.0, {}, 12);
  const Eigen::ArrayXd y = ds.y_raw.array() - ds.y_raw.mean();
  const double var = y.square().sum() / (n - 1);
  // SE of a normal sample variance: sqrt(2 / (n - 1)).
  EXPECT_NEAR(var, 1.0, 4.0 * std::sqrt(2.0 / (n - 1)));
}

TEST(Synth, OlsRecoversCoefficients) {
  const int n = 10000;
  const Eigen::Vector2d beta(1.0, -1.0);
  const auto ds = synth_regression(n, 2, beta, 1.0, {}, 13);
  const Eigen::MatrixXd& X = ds.X_raw;
  const Eigen::Matrix2d xtx = X.transpose() * X;
  const Eigen::Vector2d est = xtx.ldlt().solve(X.transpose() * ds.y_raw);
  const Eigen::Vector2d resid_var = Eigen::Vector2d::Constant((ds.y_raw - X * est).squaredNorm() / (n - 2));
  const Eigen::Vector2d se = (xtx.inverse().diagonal().array() * resid_var.array()).sqrt();
  for (int j = 0; j < 2; ++j) EXPECT_LT(std::abs(est[j] - beta[j]), 4.0 * se[j]);
}

TEST(Synth, CorrelatedDesign) {
  const auto ds = synth_regression(20000, 3, Eigen::VectorXd::Zero(3), 1.0, {DesignSpec::Kind::Correlated, 0.7}, 14);
  const auto r = standardize(ds);
  const double n1 = 19999.0;
  EXPECT_NEAR(r.XtX(0, 1) / n1, 0.7, 0.02);
  EXPECT_NEAR(r.XtX(0, 2) / n1, 0.49, 0.02);
  EXPECT_EQ(ds.name, "synthetic-correlated");
  EXPECT_THROW(synth_regression(10, 2, Eigen::Vector2d::Zero(), 1.0, {DesignSpec::Kind::Correlated, 1.0}, 1),
               InvalidParameter);
}

}  // namespace
