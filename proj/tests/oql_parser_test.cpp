#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "optkb/errors.hpp"
#include "optkb/oql.hpp"
#include "optkb/vocabulary.hpp"

using namespace optkb;
using namespace optkb::oql;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_query(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError("none", 0);
}

}  // namespace

TEST(OqlParse, SinglePattern) {
  const auto q = parse_query("SELECT ?a WHERE { ?a rdf:type opt:OptimizationAlgorithm . }");
  EXPECT_EQ(q.select_vars, std::vector<std::string>{"a"});
  ASSERT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(q.patterns[0].subject, PatternTerm(Variable{"a"}));
  EXPECT_EQ(q.patterns[0].predicate, PatternTerm(vocab::rdf_type()));
  EXPECT_EQ(q.patterns[0].object, PatternTerm(vocab::optimization_algorithm()));
  EXPECT_TRUE(q.filters.empty());
  EXPECT_FALSE(q.limit);
}

TEST(OqlParse, ConjunctionFilter) {
  const auto q = parse_query(
      "SELECT ?e WHERE { ?r opt:evaluationNumber ?e . FILTER(?e >= 1000 && ?e <= 2000) }");
  ASSERT_EQ(q.filters.size(), 1u);
  const auto& f = q.filters[0];
  EXPECT_EQ(f.op, ExprOp::And);
  ASSERT_EQ(f.args.size(), 2u);
  EXPECT_EQ(f.args[0], Expr::node(ExprOp::Ge, {Expr::variable("e"), Expr::literal(Term::integer(1000))}));
  EXPECT_EQ(f.args[1], Expr::node(ExprOp::Le, {Expr::variable("e"), Expr::literal(Term::integer(2000))}));
}

TEST(OqlParse, Precedence) {
  const auto q = parse_query(
      "SELECT ?x WHERE { ?x <http://ex.org/p> ?v . FILTER(!(?v = 1) || ?v > 2.5 && ?v != \"s\") }");
  const auto& f = q.filters[0];
  ASSERT_EQ(f.op, ExprOp::Or);
  EXPECT_EQ(f.args[0].op, ExprOp::Not);
  EXPECT_EQ(f.args[1].op, ExprOp::And);
  EXPECT_EQ(f.args[1].args[0].args[1].constant, Term::real(2.5));
  EXPECT_EQ(f.args[1].args[1].args[1].constant, Term::string("s"));
}

TEST(OqlParse, PrefixesLimitDistinctComments) {
  const auto q = parse_query(
      "# header\nPREFIX ex: <http://ex.org/>\nSELECT DISTINCT ?s ?o WHERE {\n"
      "  ?s ex:p ?o .  # trailing\n  ?o a ex:C\n} LIMIT 5");
  EXPECT_TRUE(q.distinct);
  EXPECT_EQ(q.limit, 5);
  ASSERT_EQ(q.patterns.size(), 2u);
  EXPECT_EQ(q.patterns[0].predicate, PatternTerm(Term::iri("http://ex.org/p")));
  EXPECT_EQ(q.patterns[1].predicate, PatternTerm(vocab::rdf_type()));
  EXPECT_EQ(q.patterns[1].object, PatternTerm(Term::iri("http://ex.org/C")));
}

TEST(OqlParse, TypedLiterals) {
  const auto q = parse_query(
      "SELECT ?s WHERE { ?s <http://ex.org/d> \"2015-07-11\"^^xsd:date . "
      "?s <http://ex.org/n> -3 . ?s <http://ex.org/r> 1e3 }");
  EXPECT_EQ(q.patterns[0].object, PatternTerm(Term::date("2015-07-11")));
  EXPECT_EQ(q.patterns[1].object, PatternTerm(Term::integer(-3)));
  EXPECT_EQ(q.patterns[2].object, PatternTerm(Term::real(1000.0)));
}

TEST(OqlParse, EmptyWhere) {
  const auto e = parse_error("SELECT ?x WHERE { }");
  EXPECT_NE(std::string(e.what()).find("empty WHERE"), std::string::npos);
}

TEST(OqlParse, UnknownPrefix) {
  const auto e = parse_error("SELECT ?x WHERE {\n  ?x foo:bar ?y }");
  EXPECT_NE(std::string(e.what()).find("unknown prefix 'foo:'"), std::string::npos);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 6u);
}

TEST(OqlParse, SelectVariableMissingFromWhere) {
  const auto e = parse_error("SELECT ?x ?zz WHERE { ?x ?p ?o }");
  EXPECT_NE(std::string(e.what()).find("?zz"), std::string::npos);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 11u);
}

TEST(OqlParse, FilterVariableMissingFromWhere) {
  EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x ?p ?o . FILTER(?q > 1) }"), ParseError);
}

TEST(OqlParse, OtherErrors) {
  for (const char* bad : {"", "SELECT WHERE { ?a ?b ?c }", "SELECT ?a { ?a ?b ?c }",
                          "SELECT ?a WHERE { ?a ?b ?c ", "SELECT ?a WHERE { ?a ?b ?c } LIMIT 0",
                          "SELECT ?a WHERE { ?a ?b ?c } extra", "SELECT ?a WHERE { \"lit\" ?b ?a }",
                          "SELECT ?a WHERE { ?a <rel> ?c }", "SELECT ?a WHERE { ?a ?b ?c ?a ?b ?c }",
                          "SELECT ?a WHERE { ?a ?b ?c . FILTER(?a <) }"}) {
    EXPECT_THROW(parse_query(bad), ParseError) << bad;
  }
  EXPECT_EQ(parse_error("SELECT ?a WHERE { ?a ?b ?c } LIMIT 0").column(), 36u);
}

TEST(OqlParse, ToStringRoundTrip) {
  fixture::Rng rng(41);
  for (int k = 0; k < 300; ++k) {
    const auto triples = fixture::random_triples(rng, 60);
    const auto q = fixture::random_query(rng, triples);
    const auto text = to_string(q);
    Query back;
    ASSERT_NO_THROW(back = parse_query(text)) << text;
    EXPECT_EQ(back.select_vars, q.select_vars) << text;
    EXPECT_EQ(back.patterns, q.patterns) << text;
    EXPECT_EQ(back.filters, q.filters) << text;
    EXPECT_EQ(back.limit, q.limit) << text;
    EXPECT_EQ(back.distinct, q.distinct) << text;
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(OqlParse, ShippedQueriesParse) {
  for (const char* name : {"q1_instances", "q2_provenance", "q3_algorithms", "q4_ela",
                           "q5_fixed_budget_eval", "q5_fixed_budget_run", "q6_fixed_target_eval",
                           "q6_fixed_target_run", "study_budget_window"}) {
    const auto text = fixture::read_file(fixture::source_path(std::string("docs/queries/") + name + ".oql"));
    EXPECT_NO_THROW(parse_query(text)) << name;
  }
  const auto q = parse_query(fixture::read_file(fixture::source_path("docs/queries/study_budget_window.oql")));
  EXPECT_EQ(q.limit, 5);
}
