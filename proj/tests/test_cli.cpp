#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string("CHARNUM_CACHE_DIR= ") + CHARNUM_BIN + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("compute p2 genus 0 as json") {
  Run r = run("compute --target p2 --genus 0 --dmax 3 --format json");
  REQUIRE(r.code == 0);
  auto rows = nlohmann::json::parse(r.out);
  // a + b + 2c = 3d - 1 has 4, 12 and 25 solutions for d = 1, 2, 3
  CHECK(rows.size() == 4 + 12 + 25);
  CHECK(rows[0]["d"] == 1);
  int found = 0;
  for (const auto& row : rows) {
    if (row["d"] != 3 || row["c"] != 0) continue;
    if (row["a"] == 8) found += row["value"] == "12";
    if (row["b"] == 8) found += row["value"] == "400";
  }
  CHECK(found == 2);
}

TEST_CASE("json keys keep their order") {
  Run r = run("compute --target p2 --dmax 1");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("{\"d\":1,\"a\":2,\"b\":0,\"c\":0,\"value\":\"1\"}") != std::string::npos);
}

TEST_CASE("csv and markdown split bidegrees") {
  Run csv = run("compute --target p1xp1 --genus 0 --dmax 1,1 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("d1,d2,a,b,c,value\n", 0) == 0);
  CHECK(csv.out.find("1,1,0,3,0,8\n") != std::string::npos);
  Run md = run("compute --target p1xp1 --genus 0 --dmax 2 --format md");
  REQUIRE(md.code == 0);
  CHECK(md.out.find("| d1 | d2 |") != std::string::npos);
}

TEST_CASE("genus-1 output") {
  Run r = run("compute --target p2 --genus 1 --dmax 3 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("3,9,0,0,1\n") != std::string::npos);
  CHECK(r.out.find("3,0,9,0,33616\n") != std::string::npos);
}

TEST_CASE("gw and hurwitz tables") {
  Run gw = run("gw --target p2 --dmax 4 --format csv");
  REQUIRE(gw.code == 0);
  CHECK(gw.out.find("4,11,620") != std::string::npos);
  Run h = run("hurwitz --dmax 4 --genus 1 --format csv");
  REQUIRE(h.code == 0);
  CHECK(h.out.find("1,4,8,5460") != std::string::npos);
  CHECK(h.out.find("0,") == std::string::npos);
}

TEST_CASE("descendant values") {
  Run r = run("descendant 'tau0(T2)^4 tau1(T1) @ g=0 d=2' --no-cache --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out == "1\n");
  Run g1 = run("descendant 'tau1(T0) @ g=1 d=0' --format csv");
  REQUIRE(g1.code == 0);
  CHECK(g1.out == "1/8\n");
}

TEST_CASE("metric display") {
  Run r = run("metric --target p2");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("exp(2*y0) * ", 0) == 0);
  CHECK(r.out.find("2*y1^2 + 2*y2") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("compute --target p2").code == 2);
  CHECK(run("compute --target p2 --dmax x").code == 2);
  CHECK(run("compute --target p2 --dmax 3 --format xml").code == 2);
  CHECK(run("compute --target gr24 --dmax 2").code == 2);
  CHECK(run("descendant 'tau0(T2'").code == 2);
  CHECK(run("compute --target p2 --genus 2 --dmax 3").code == 3);
  CHECK(run("compute --target p2 --genus 2 --dmax 4").code == 3);
  CHECK(run("compute --target p2 --genus 1 --dmax 3 --seeds /nonexistent/seeds.txt").code == 3);
  CHECK(run("compute --target p2 --genus 1 --dmax 6").code == 3);
  CHECK(run("verify --suite hurwitz").code == 0);
}
