// Copyright 2026 The TriMat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trimat/csv.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "trimat/error.hpp"

using namespace trimat;

namespace {

std::string tmp_csv(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("trimat_csv_test_" + name + ".csv");
  std::ofstream out(path);
  out << body;
  return path.string();
}

const char* kLdosHeader =
    "userID,itemID,rating,location,mood,weather,season,daytype,endEmo\n";

}  // namespace

TEST_CASE("named mapping loads an LDOS-style file") {
  const std::string path = tmp_csv("basic", std::string(kLdosHeader) +
                                                "u1,m1,4,1,2,3,1,2,5\n"
                                                "u2,m2,2,2,-1,1,4,1,7\n");
  const Dataset ds = load_csv(path, ColumnMapping::ldos_comoda());
  REQUIRE(ds.size() == 2);
  CHECK(ds.n_users == 2);
  CHECK(ds.n_items == 2);
  CHECK(ds.interactions[0].rating == doctest::Approx(4.0));
  CHECK(ds.interactions[1].context.missing[1]);  // mood -1
  CHECK(ds.interactions[0].context.code[5] == 5);
}

TEST_CASE("columns are matched by header name, not position") {
  // Same roles, scrambled order, plus ignored extra columns.
  const std::string path = tmp_csv(
      "scrambled",
      "age,rating,itemID,endEmo,daytype,season,weather,mood,location,userID\n"
      "99,3,m7,1,2,4,5,3,1,u9\n");
  const Dataset ds = load_csv(path, ColumnMapping::ldos_comoda());
  REQUIRE(ds.size() == 1);
  CHECK(ds.user_ids[0] == "u9");
  CHECK(ds.item_ids[0] == "m7");
  CHECK(ds.interactions[0].rating == doctest::Approx(3.0));
  CHECK(ds.interactions[0].context.code[0] == 1);   // location
  CHECK(ds.interactions[0].context.code[5] == 1);   // endEmo
  CHECK(ds.interactions[0].context.code[2] == 5);   // weather
}

TEST_CASE("a missing required column is a schema error naming it") {
  const std::string path = tmp_csv(
      "nocol", "userID,itemID,location,mood,weather,season,daytype,endEmo\n"
               "u1,m1,1,2,3,1,2,5\n");
  try {
    load_csv(path, ColumnMapping::ldos_comoda());
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("rating") != std::string::npos);
  }
}

TEST_CASE("positional mapping with custom delimiter and no header") {
  const std::string path = tmp_csv("positional",
                                   "u1;m1;4;1;2;3;1;2;5\n"
                                   "u2;m1;5;2;1;1;2;1;3\n");
  const Dataset ds = load_csv(path, ColumnMapping::positional(';', false));
  REQUIRE(ds.size() == 2);
  CHECK(ds.n_items == 1);
  CHECK(ds.interactions[1].rating == doctest::Approx(5.0));
}

TEST_CASE("whitespace is trimmed; blank lines are skipped") {
  const std::string path = tmp_csv("spacing", std::string(kLdosHeader) +
                                                  " u1 , m1 , 4 ,1,2,3,1,2,5\n"
                                                  "\n"
                                                  "u2,m2,2,2,1,1,4,1,7\n");
  const Dataset ds = load_csv(path, ColumnMapping::ldos_comoda());
  REQUIRE(ds.size() == 2);
  CHECK(ds.user_ids[0] == "u1");
  CHECK(ds.item_ids[0] == "m1");
}

TEST_CASE("unparseable cells carry their 1-based physical line number") {
  const std::string path = tmp_csv("badrating", std::string(kLdosHeader) +
                                                    "u1,m1,4,1,2,3,1,2,5\n"
                                                    "u2,m2,oops,2,1,1,4,1,7\n");
  try {
    load_csv(path, ColumnMapping::ldos_comoda());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);  // header is line 1
  }
}

TEST_CASE("non-positive ratings are rejected with their row") {
  const std::string path = tmp_csv("zerorating", std::string(kLdosHeader) +
                                                     "u1,m1,0,1,2,3,1,2,5\n");
  try {
    load_csv(path, ColumnMapping::ldos_comoda());
    FAIL("expected InvalidRatingError");
  } catch (const InvalidRatingError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("context code 0 is invalid (only -1 means missing)") {
  const std::string path = tmp_csv("zerocode", std::string(kLdosHeader) +
                                                   "u1,m1,3,0,2,3,1,2,5\n");
  CHECK_THROWS_AS(load_csv(path, ColumnMapping::ldos_comoda()), DataError);
}

TEST_CASE("ragged rows are rejected") {
  const std::string path = tmp_csv("ragged", std::string(kLdosHeader) +
                                                 "u1,m1,3,1,2\n");
  CHECK_THROWS_AS(load_csv(path, ColumnMapping::ldos_comoda()), DataError);
}

TEST_CASE("files without data rows are empty-dataset errors") {
  CHECK_THROWS_AS(load_csv(tmp_csv("empty", ""), ColumnMapping::ldos_comoda()),
                  DataError);
  CHECK_THROWS_AS(
      load_csv(tmp_csv("headeronly", kLdosHeader),
               ColumnMapping::ldos_comoda()),
      EmptyDatasetError);
}

TEST_CASE("a nonexistent file is a data error") {
  CHECK_THROWS_AS(load_csv("/nonexistent/definitely_not_here.csv",
                           ColumnMapping::ldos_comoda()),
                  DataError);
}

TEST_CASE("two roles mapped to one column is a schema error") {
  ColumnMapping mapping = ColumnMapping::positional();
  mapping.rating = ColumnRef::by_position(0);  // collides with user
  const std::string path = tmp_csv("collide",
                                   "a,b,c,d,e,f,g,h,i\n"
                                   "u1,m1,3,1,2,3,1,2,5\n");
  CHECK_THROWS_AS(load_csv(path, mapping), SchemaError);
}

TEST_CASE("trailing delimiter reads as an empty final field") {
  // Ten columns, the last unnamed/empty; the nine roles still resolve.
  const std::string path =
      tmp_csv("trailing",
              "userID,itemID,rating,location,mood,weather,season,daytype,"
              "endEmo,\n"
              "u1,m1,4,1,2,3,1,2,5,\n");
  const Dataset ds = load_csv(path, ColumnMapping::ldos_comoda());
  CHECK(ds.size() == 1);
}
