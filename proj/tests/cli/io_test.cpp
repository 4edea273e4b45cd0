#include "commands.hpp"
#include "io.hpp"
#include "random_objects.hpp"

#include <fmt/format.h>
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace koszul;
using namespace koszul::io;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data_dir() { return KOSZUL_DATA_DIR; }

int error_line(const std::string& text) {
  try {
    parse_input(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const char* kExterior =
    "field 3\n"
    "presentation L\n"
    "  gens x y\n"
    "  rel x.x\n"
    "  rel y.y\n"
    "  rel x.y + y.x\n"
    "end\n";

}  // namespace

TEST(Parse, ExteriorStanza) {
  Document d = parse_input(kExterior);
  ASSERT_EQ(d.presentations.size(), 1u);
  const QuadPresentation& p = d.presentations[0].p;
  EXPECT_EQ(p.field, Field::prime(3));
  EXPECT_EQ(p.r.dim(), 3u);
  EXPECT_EQ(p, exterior_algebra(Field::prime(3), {"x", "y"}));
}

TEST(Parse, GroupStanzaForZ2) {
  Document d = parse_input("group Z\n  order 2\n  identity 0\n  row 0 1\n  row 1 0\nend\n");
  ASSERT_EQ(d.groups.size(), 1u);
  EXPECT_EQ(d.groups[0].g.order, 2u);
  EXPECT_EQ(d.groups[0].g.mul, (std::vector<std::uint32_t>{0, 1, 1, 0}));
  EXPECT_NO_THROW(d.groups[0].g.validate());
}

TEST(Parse, CoefficientsAndIndices) {
  Document d = parse_input("field Q\npresentation P\n  gens x y\n  rel 1/2*x.y - 3 y.x + 0.0\nend\n");
  const Mat& r = d.presentations[0].p.r.basis();
  ASSERT_EQ(r.rows(), 1u);
  // normalized so the pivot x.x is 1
  EXPECT_EQ(r.at(0, 0), Scalar(Field::rationals(), 1));
  EXPECT_EQ(r.at(0, 1), Scalar(Field::rationals(), mpq_class(1, 2)));
  EXPECT_EQ(r.at(0, 2), Scalar(Field::rationals(), -3));
}

TEST(Parse, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("field 3\npresentation P\n  gens x y\n  rel x.2\nend\n"), 4);  // index out of range
  EXPECT_EQ(error_line("presentation P\n  gens x y\n  rel x.z\nend\n"), 3);
  EXPECT_EQ(error_line("presentation P\n  gens x y\n  rel x.y.x\nend\n"), 3);
  EXPECT_EQ(error_line("field 4\n"), 1);
  EXPECT_EQ(error_line("field 3\npresentation P\n  gens x\n  rel 1/3 x.x\nend\n"), 4);
  EXPECT_EQ(error_line("presentation P\n  gens x x\nend\n"), 2);
  EXPECT_EQ(error_line("presentation P\n  gens x\n"), 1);  // no end
  EXPECT_EQ(error_line("\n\nwidget W\nend\n"), 3);
  EXPECT_EQ(error_line("group G\n  order 2\n  row 0 1\n  row 1 1\nend\n"), 1);  // not a group
  EXPECT_EQ(error_line("group G\n  order 2\n  row 0 1\nend\n"), 3);
  EXPECT_EQ(error_line("group G\n  catalog Z2\n  normal 5\nend\n"), 3);
  EXPECT_EQ(error_line("group G\n  catalog Nope\nend\n"), 1);
  EXPECT_EQ(error_line("fieldspec F\n  q 7\n  l 2\nend\n"), 1);  // 7 is not 1 mod 4
  EXPECT_EQ(error_line(std::string(kExterior) + "presentation M\n  gens t\nend\nmorphism f L -> M\n  x = t\nend\n"), 11);
  EXPECT_EQ(error_line("field 3\nlie L\n  gens x y\n  rel x.y + y.x\nend\n"), 2);  // not antisymmetric
  EXPECT_EQ(error_line("coalgebra C\n  dim 1\n  delta 0 = 0.0\n  counit 1\n  coaug 0\nend\n"), 1);
  EXPECT_EQ(error_line("presentation P\n  gens x\n  rel x.x x.x\nend\n"), 3);
}

TEST(Parse, ErrorsAreInputErrors) {
  EXPECT_THROW(parse_input("field 3\npresentation P\n  gens x y\n  rel x.2\nend\n"), InputError);
}

TEST(Parse, DefaultField) {
  Document d = parse_input("presentation P\n  gens x\nend\n", Field::prime(5));
  EXPECT_EQ(d.presentations[0].p.field, Field::prime(5));
  EXPECT_EQ(parse_input("presentation P\n  gens x\nend\n").presentations[0].p.field, Field::prime(2));
}

TEST(RoundTrip, BundledInputs) {
  std::vector<std::filesystem::path> files{data_dir() / "groups.txt"};
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "inputs")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  ASSERT_GE(files.size(), 8u);
  for (const auto& f : files) {
    const Document d = parse_input(slurp(f));
    const std::string text = emit(d);
    const Document again = parse_input(text);
    EXPECT_TRUE(again == d) << f;
    EXPECT_EQ(emit(again), text) << f;
  }
}

TEST(RoundTrip, BundledGroupsMatchTheCatalog) {
  const Document d = parse_input(slurp(data_dir() / "groups.txt"));
  const auto& cat = group_catalog();
  ASSERT_EQ(d.groups.size(), cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(d.groups[i].g.name, cat[i].name);
    EXPECT_EQ(d.groups[i].g.mul, cat[i].mul);
  }
}

TEST(RoundTrip, RandomObjects) {
  std::mt19937 rng(3);
  for (Field f : {Field::prime(2), Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 15; ++t) {
      Document d;
      const std::size_t dim = 1 + rng() % 3;
      QuadPresentation p = koszul::testing::random_presentation(f, dim, rng() % (dim * dim + 1), rng);
      d.presentations.push_back({"A", p});
      QuadModulePresentation m = free_module(p, koszul::testing::names(2, "u"));
      m.s = koszul::testing::random_subspace(f, dim * 2, rng() % (dim * 2 + 1), rng);
      d.modules.push_back({"M", "A", m});
      // R_B = everything, so any f_1 carries R_A into R_B
      QuadPresentation b = tensor_presentation(f, koszul::testing::names(1, "t"));
      b.r = Subspace::full(f, 1);
      d.presentations.push_back({"B", b});
      Mat f1(f, 1, dim);
      for (std::size_t k = 0; k < dim; ++k) f1.set(0, k, static_cast<std::int64_t>(rng() % 7) - 3);
      d.morphisms.push_back({"g", "A", "B", f1});
      d.ideals.push_back({"J", "A", {Subspace(f, 1), Subspace(f, dim),
                                      koszul::testing::random_subspace(f, dim * dim, rng() % 3, rng)}});
      if (!f.is_rational()) {
        d.coalgebras.push_back({"C", group_coalgebra(cyclic_group(1 + rng() % 4), f)});
        d.comodules.push_back({"R", "C", regular_comodule(d.coalgebras[0].c, rng() % 2)});
      }
      const std::string text = emit(d);
      Document again;
      ASSERT_NO_THROW(again = parse_input(text)) << text;
      EXPECT_TRUE(again == d) << text;
    }
  }
}

TEST(Digest, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

namespace {

cli::Outcome run(const std::string& command, const std::string& text, int w = 3) {
  cli::Options opt;
  opt.command = command;
  opt.i_max = opt.j_max = w;
  return cli::run_command(opt, text);
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("certify", kExterior).exit_code, cli::kOk);
  const std::string bad = "field 2\npresentation N\n  gens x y\n  rel x.x + x.y\n  rel y.x\nend\n";
  cli::Outcome o = run("certify", bad, 4);
  EXPECT_EQ(o.exit_code, cli::kVerdictFailed);
  EXPECT_EQ(o.report["verdicts"][0]["status"], "fails");
  o = run("certify", "presentation P\n  gens x\n  rel x.y\nend\n");
  EXPECT_EQ(o.exit_code, cli::kBadInput);
  EXPECT_NE(o.report["error"].get<std::string>().find("line 3"), std::string::npos);
  EXPECT_EQ(run("nonsense", kExterior).exit_code, cli::kBadInput);
  EXPECT_EQ(run("morphism", kExterior).exit_code, cli::kBadInput);  // nothing to run on
  cli::Options tiny;
  tiny.command = "homology";
  tiny.budget = 3;
  EXPECT_EQ(cli::run_command(tiny, kExterior).exit_code, cli::kBadInput);
}

TEST(Cli, ReportSchema) {
  const cli::Outcome o = run("homology", kExterior);
  const auto& j = o.report;
  for (const char* key : {"command", "input_digest", "window", "verdicts", "tables", "witnesses", "timings"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["input_digest"], fmt::format("{:016x}", fnv1a64(kExterior)));
  EXPECT_EQ(j["tables"]["L.tor"]["2,2"], 3);
  EXPECT_EQ(j["tables"]["L.tor"]["1,2"], 0);
  EXPECT_TRUE(j["timings"].empty());
}

TEST(Cli, EveryCommandIsDeterministic) {
  const std::string all = slurp(data_dir() / "inputs" / "morphisms.txt");
  for (const auto& [cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"certify", "exterior.txt"}, {"dual", "exterior.txt"}, {"component", "exterior.txt"},
           {"homology", "morphisms.txt"}, {"dist-check", "morphisms.txt"}, {"morphism", "morphisms.txt"},
           {"theorem7", "morphisms.txt"}, {"filtration", "coalgebra.txt"}, {"nilp-compare", "coalgebra.txt"},
           {"grading-pipeline", "conilpotent.txt"}, {"cofreeness", "wrapper.txt"}, {"theorem9", "morphisms.txt"},
           {"lie", "lie.txt"}, {"galois-tower", "towers.txt"}, {"theorem2", "synthetic.txt"}}) {
    const std::string text = slurp(data_dir() / "inputs" / file);
    const cli::Outcome a = run(cmd, text, 4), b = run(cmd, text, 4);
    EXPECT_LE(a.exit_code, 1) << cmd << " " << a.report.value("error", "");
    EXPECT_EQ(cli::render(a.report), cli::render(b.report)) << cmd;
  }
  EXPECT_EQ(cli::command_names().size(), 15u);
}
