#include <random>

#include "doctest.h"
#include "sackg/errors.hpp"
#include "sackg/prompting.hpp"

using namespace sackg;

namespace {

PromptBundle sample_bundle() {
  PromptBundle b;
  b.text = "Rice grows in paddy fields.";
  b.entity = Entity("rice");
  b.instruction = render_instruction(default_instruction_template(), b.entity, 3);
  b.examples = {{"rice", "type", "cereal grain"}, {"rice", "grown in", "flooded fields"}};
  return b;
}

}  // namespace

TEST_SUITE("prompting") {

TEST_CASE("build_prompt renders the three segments in order") {
  PromptBundle b = sample_bundle();
  std::string prompt = build_prompt(b);
  auto text_pos = prompt.find(b.text);
  auto instruction_pos = prompt.find(b.instruction);
  auto example_pos = prompt.find("(rice | type | cereal grain)");
  REQUIRE(text_pos != std::string::npos);
  REQUIRE(instruction_pos != std::string::npos);
  REQUIRE(example_pos != std::string::npos);
  CHECK(text_pos < instruction_pos);
  CHECK(instruction_pos < example_pos);
}

TEST_CASE("build_prompt keeps example order") {
  PromptBundle b = sample_bundle();
  std::string prompt = build_prompt(b);
  CHECK(prompt.find("(rice | type | cereal grain)") <
        prompt.find("(rice | grown in | flooded fields)"));
}

TEST_CASE("empty text drops the text segment only") {
  PromptBundle b = sample_bundle();
  b.text.clear();
  std::string prompt = build_prompt(b);
  CHECK(prompt.rfind(b.instruction, 0) == 0);  // starts with the instruction
  CHECK(prompt.find("(rice | type | cereal grain)") != std::string::npos);
}

TEST_CASE("empty examples drop the example segment only") {
  PromptBundle b = sample_bundle();
  b.examples.clear();
  std::string prompt = build_prompt(b);
  CHECK(prompt.find(b.text) != std::string::npos);
  CHECK(prompt.find("(rice | type | cereal grain)") == std::string::npos);
  CHECK(prompt.size() == b.text.size() + 2 + b.instruction.size());
}

TEST_CASE("instruction names the entity verbatim and the minimum count") {
  Entity e("Rice Blast Disease");
  std::string instruction = render_instruction(default_instruction_template(), e, 5);
  CHECK(instruction.find("Rice Blast Disease") != std::string::npos);
  CHECK(instruction.find('5') != std::string::npos);
  CHECK(instruction.find("{entity}") == std::string::npos);
  CHECK(instruction.find("{min_triples}") == std::string::npos);
}

TEST_CASE("templates without the mandatory placeholders are rejected") {
  CHECK_THROWS_AS(render_instruction("no placeholders", Entity("rice"), 3), ConfigError);
  CHECK_THROWS_AS(render_instruction("only {entity}", Entity("rice"), 3), ConfigError);
}

TEST_CASE("parse_triples accepts the canonical format") {
  auto out = parse_triples("(rice | optimal growth temperature | 20-25 degrees Celsius)");
  REQUIRE(out.triples.size() == 1);
  CHECK(out.malformed_lines.empty());
  CHECK(out.triples[0].head == "rice");
  CHECK(out.triples[0].relation == "optimal growth temperature");
  CHECK(out.triples[0].tail == "20-25 degrees Celsius");
}

TEST_CASE("parse_triples accepts bare and spaced variants") {
  auto out = parse_triples("rice | type | cereal\n(  rice |grown in|  fields  )");
  REQUIRE(out.triples.size() == 2);
  CHECK(out.triples[1].relation == "grown in");
  CHECK(out.triples[1].tail == "fields");
}

TEST_CASE("parse_triples rejects the wrong arity") {
  auto out = parse_triples("rice, color");
  CHECK(out.triples.empty());
  REQUIRE(out.malformed_lines.size() == 1);
  CHECK(out.malformed_lines[0].line_no == 1);
  CHECK(out.malformed_lines[0].raw == "rice, color");

  auto too_many = parse_triples("a | b | c | d");
  CHECK(too_many.triples.empty());
  CHECK(too_many.malformed_lines.size() == 1);

  auto empty_field = parse_triples("a || c");
  CHECK(empty_field.triples.empty());
  CHECK(empty_field.malformed_lines.size() == 1);
}

TEST_CASE("parse_triples separates good lines from prose") {
  std::string raw =
      "(rice | type | cereal)\n"
      "Here are some triples I generated for you:\n"
      "(rice | grown in | fields)\n"
      "\n"
      "(rice | needs | water)\n";
  auto out = parse_triples(raw);
  CHECK(out.triples.size() == 3);
  REQUIRE(out.malformed_lines.size() == 1);
  CHECK(out.malformed_lines[0].line_no == 2);
}

TEST_CASE("render then parse is the identity on triples") {
  std::mt19937 gen(23);
  std::vector<std::string> vocabulary = {"rice",  "field", "water", "20-25", "Oryza",
                                         "cake",  "grain", "soil",  "crop",  "blast"};
  auto random_field = [&] {
    std::string field;
    int words = 1 + static_cast<int>(gen() % 3);
    for (int w = 0; w < words; ++w) {
      if (w > 0) field += ' ';
      field += vocabulary[gen() % vocabulary.size()];
    }
    return field;
  };
  for (int trial = 0; trial < 50; ++trial) {
    RawTriple t{random_field(), random_field(), random_field()};
    auto out = parse_triples(render_triple(t));
    REQUIRE(out.triples.size() == 1);
    CHECK(out.triples[0] == t);
  }
}

TEST_CASE("parse_triples is total on garbage") {
  std::mt19937 gen(29);
  std::string alphabet = "(|)ab \t.,!";
  for (int trial = 0; trial < 50; ++trial) {
    std::string raw;
    int lines = static_cast<int>(gen() % 6);
    int line_count = 0;
    for (int l = 0; l < lines; ++l) {
      int len = static_cast<int>(gen() % 12);
      for (int c = 0; c < len; ++c) raw += alphabet[gen() % alphabet.size()];
      raw += '\n';
      ++line_count;
    }
    ParsedOutput out;
    CHECK_NOTHROW(out = parse_triples(raw));
    CHECK(out.triples.size() + out.malformed_lines.size() <=
          static_cast<std::size_t>(line_count));
  }
}

}  // TEST_SUITE
