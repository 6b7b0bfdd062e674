#include <catch_amalgamated.hpp>

#include <sstream>

#include "sidon/errors.hpp"
#include "sidon/pattern.hpp"
#include "sidon/sequence.hpp"

using namespace sidon;

TEST_CASE("sequence construction enforces positive strictly increasing values") {
  CHECK_NOTHROW(Sequence{1, 2, 4});
  CHECK_THROWS_AS((Sequence{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS((Sequence{1, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS((Sequence{5, 2}), std::invalid_argument);
  CHECK(Sequence::from_unordered({8, 1, 4, 1, 2}) == Sequence{1, 2, 4, 8});
}

TEST_CASE("sequence queries") {
  Sequence s{1, 2, 4, 8, 13};
  CHECK(s.size() == 5);
  CHECK(s.max() == 13);
  CHECK(Sequence{}.max() == 0);
  CHECK(s.contains(8));
  CHECK_FALSE(s.contains(9));
  CHECK(s.prefix(3) == Sequence{1, 2, 4});
  CHECK(s.prefix(99) == s);
  CHECK(s.with(3) == Sequence{1, 2, 3, 4, 8, 13});
  CHECK_THROWS(s.with(4));
  CHECK_THROWS(s.with(0));
  CHECK(s.up_to(7) == Sequence{1, 2, 4});
  CHECK(Sequence{1, 2, 5} < Sequence{1, 3});
  CHECK(to_string(s, ",") == "1,2,4,8,13");
}

TEST_CASE("text format round trip") {
  Sequence s{1, 2, 4, 8, 13, 21, 31, 45, 66, 81};
  std::stringstream ss;
  write_sequence(ss, s);
  CHECK(ss.str() == "1\n2\n4\n8\n13\n21\n31\n45\n66\n81\n");
  CHECK(read_sequence(ss) == s);

  std::istringstream empty("");
  CHECK(read_sequence(empty).empty());
  std::istringstream no_trailing("3\n7");
  CHECK(read_sequence(no_trailing) == Sequence{3, 7});
}

TEST_CASE("malformed text reports the offending line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_sequence(in);
    } catch (const parse_error& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1\n2\n2\n") == 3);
  CHECK(line_of("1\n5\n4\n") == 3);
  CHECK(line_of("1\nx\n") == 2);
  CHECK(line_of("1\n\n3\n") == 2);
  CHECK(line_of("-1\n") == 1);
  CHECK(line_of("0\n") == 1);
  CHECK(line_of("1 2\n") == 1);
  CHECK(line_of("1\r\n2\r\n") == 1);
  CHECK(line_of("1\n99999999999999999999999\n") == 2);
  CHECK(line_of("1\n18446744073709551615\n") == 0);

  std::istringstream in("4\n2\n");
  CHECK_THROWS_WITH(read_sequence(in), Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("pattern names") {
  CHECK(parse_pattern("sidon") == Pattern::sidon());
  CHECK(parse_pattern("sum-free") == Pattern::sum_free());
  CHECK(parse_pattern("sumfree") == Pattern::sum_free());
  CHECK(parse_pattern("bhg", 2, 2) == Pattern::bhg(2, 2));
  CHECK(to_string(Pattern::bhg(3, 2)) == "B3[2]");
  CHECK(to_string(Pattern::sum_free()) == "sum-free");
  CHECK_THROWS_AS(parse_pattern("golomb"), std::invalid_argument);
  CHECK_THROWS_AS(Pattern::bhg(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Pattern::bhg(2, 0), std::invalid_argument);
}
