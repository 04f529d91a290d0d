#include <gtest/gtest.h>

#include "nonholonomy/cli/document.hpp"
#include "random_objects.hpp"

using namespace nonholonomy;
using namespace nonholonomy::cli;

namespace {

ParseError parse_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError("", 0, 0);
}

}  // namespace

TEST(Document, OneFormBinding) {
  const Document doc = parse_document("coords x y z; form a = d(z) - y*d(x);");
  ASSERT_TRUE(doc.chart);
  ASSERT_EQ(doc.bindings.size(), 1U);
  const Chart& c = *doc.chart;
  EXPECT_EQ(doc.form("a"), DiffForm::differential(c, 2) - Polynomial::variable(c, 1) * DiffForm::differential(c, 0));
}

TEST(Document, RepeatedWedgeIsTheZeroTwoForm) {
  const Document doc = parse_document("coords x y; form a = d(x) ^ d(x);");
  EXPECT_EQ(doc.form("a").degree(), 2U);
  EXPECT_TRUE(doc.form("a").is_zero());
}

TEST(Document, DegreeMismatchPointsAtThePlus) {
  const ParseError e = parse_error("coords x y; form a = d(x) + d(x)^d(y);");
  EXPECT_EQ(e.line(), 1U);
  EXPECT_EQ(e.column(), 27U);
  EXPECT_NE(e.message().find("degree mismatch"), std::string::npos) << e.message();
}

TEST(Document, ErrorsCarryPositions) {
  const ParseError unknown = parse_error("coords x y;\nform a = d(q);");
  EXPECT_EQ(unknown.line(), 2U);
  EXPECT_EQ(unknown.column(), 12U);
  EXPECT_NE(unknown.message().find("unknown identifier 'q'"), std::string::npos);

  const ParseError lexical = parse_error("coords x;\n  form a = $;");
  EXPECT_EQ(lexical.line(), 2U);
  EXPECT_EQ(lexical.column(), 12U);

  EXPECT_EQ(parse_error("coords x; form a = d(x)").column(), 24U);
  parse_error("form a = 1;");
  parse_error("coords x x;");
  parse_error("coords x; form x = 1;");
  parse_error("coords x y; form a = d(x)*d(y);");
  parse_error("coords x y; form a = @x;");
  parse_error("coords x y; field X = d(x);");
  parse_error("coords x y; form a = pow2(d(x), 1);");
  parse_error("coords x y; form a = 1/0;");
  parse_error("coords x y; form a = d(x); coframe b;");
  parse_error("coords x y; form w = d(x)^d(y); coframe w;");
  parse_error("coords x y; form a = d(x); form a = d(y);");
  parse_error("coords x y; form a = d(d(x)^d(y));");
  parse_error("coords x y; field X = @x; form a = d(x) ^ X;");
}

TEST(Document, BuiltinsAndFields) {
  const Document doc = parse_document(R"(
    # Darboux form on R^4
    coords x1 y1 x2 y2;
    form w = d(x1)^d(y1) + d(x2)^d(y2);
    form top = pow2(w, 2);
    field X = @x1 + y1*@x2;
    field Y = @y1;
    field Z = bracket(X, Y);
    form c = iota(X, w);
  )");
  const Chart& c = *doc.chart;
  EXPECT_EQ(doc.form("top"), DiffForm::basis(c, {0, 1, 2, 3}, 2));
  EXPECT_EQ(doc.field("Z"), -VectorField::coordinate(c, 2));
  EXPECT_EQ(doc.form("c"), DiffForm::differential(c, 1) + Polynomial::variable(c, 1) * DiffForm::differential(c, 3));
  EXPECT_THROW(doc.field("w"), InputError);
  EXPECT_THROW(doc.form("nope"), InputError);
}

TEST(Document, PresentationsAndTasks) {
  const Document doc = parse_document(R"(
    coords z x y;
    form a = d(z) - y*d(x);
    field X = @x + y*@z;
    field Y = @y;
    frame X, Y;
    coframe a;
    task flag point=x=1,y=1/2;
    task check-dlo;
    task check-mni k=1;
  )");
  EXPECT_EQ(doc.frame, (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(doc.coframe, (std::vector<std::string>{"a"}));
  ASSERT_EQ(doc.tasks.size(), 3U);
  EXPECT_EQ(doc.tasks[0].name, "flag");
  EXPECT_EQ(doc.tasks[0].arg("point"), "x=1,y=1/2");
  EXPECT_EQ(doc.tasks[1].name, "check-dlo");
  EXPECT_EQ(doc.tasks[2].arg("k"), "1");
  EXPECT_EQ(doc.distribution().rank(), 2U);
}

TEST(Document, FixedRoundTrip) {
  const char* text = "coords x y z;\nform a = -3/2*x*y*d(x) + d(z);\nform b = 0*d(x)^d(y);\nfield X = @x + y*@z;\n"
                     "frame X;\ntask check-dlo;\n";
  const Document doc = parse_document(text);
  EXPECT_EQ(doc.to_string(), text);
}

TEST(DocumentProperty, PrettyPrintRoundTrips) {
  RationalSampler rng(901);
  for (int trial = 0; trial < 200; ++trial) {
    const Chart c = Chart::numbered("u", 1 + trial % 5);
    std::string text = "coords";
    for (const auto& n : c.names()) text += " " + n;
    text += ";\n";
    for (int b = 0; b < 4; ++b) {
      const std::size_t degree = testing_support::below(rng, c.dim() + 1);
      text += "form f" + std::to_string(b) + " = " + testing_support::random_form(c, degree, rng).to_string() + ";\n";
    }
    text += "field X = " + testing_support::random_field(c, rng).to_string() + ";\n";
    text += "frame X;\ntask flag point=u1=1/2;\n";
    const Document doc = parse_document(text);
    const Document again = parse_document(doc.to_string());
    ASSERT_EQ(doc, again) << text;
    ASSERT_EQ(doc.to_string(), again.to_string());
  }
}
