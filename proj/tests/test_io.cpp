#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "relhom/io.hpp"

using namespace relhom;

#ifndef RELHOM_DATA_DIR
#define RELHOM_DATA_DIR "data"
#endif

namespace {

std::filesystem::path data_dir() { return RELHOM_DATA_DIR; }

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "relhom-io-test";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("algebra files parse to the expected algebras") {
  io::Loader loader;
  auto a2 = loader.load_algebra(data_dir() / "a2.alg");
  CHECK(a2->dim() == 3);
  CHECK(a2->p() == 5);

  auto a3 = loader.load_algebra(data_dir() / "a3.alg");
  CHECK(a3->dim() == 6);

  auto kron = loader.load_algebra(data_dir() / "kronecker.alg");
  CHECK(kron->dim() == 4);

  auto dual = loader.load_algebra(data_dir() / "dualnum.alg");
  CHECK(dual->dim() == 2);

  auto ss = loader.load_algebra(data_dir() / "semisimple2.alg");
  CHECK(ss->dim() == 2);

  // Loading the same file twice returns the same instance.
  CHECK(loader.load_algebra(data_dir() / "a2.alg").get() == a2.get());
}

TEST_CASE("module, morphism, sequence and complex files") {
  io::Loader loader;
  auto s1 = loader.load_module(data_dir() / "s1.mod");
  CHECK(s1->dims() == std::vector<std::size_t>{1, 0});
  auto p1 = loader.load_module(data_dir() / "p1.mod");
  CHECK(p1->dims() == std::vector<std::size_t>{1, 1});

  ModuleMorphism inj = loader.load_morphism(data_dir() / "inj_s2_p1.mor");
  CHECK(inj.is_injective());

  ShortSequence seq = loader.load_sequence(data_dir() / "seq_a2.seq");
  seq.validate();
  CHECK(seq.mid()->dims() == std::vector<std::size_t>{1, 1});

  BoundedComplex cx = loader.load_complex(data_dir() / "cx_a2.cx");
  CHECK(cx.lo() == -1);
  CHECK(cx.hi() == 0);
  cx.validate();
}

TEST_CASE("gluing file loads and glues to A3") {
  io::Loader loader;
  TriangularGluing g = loader.load_gluing(data_dir() / "glue_a3.glue");
  auto glued = glue_triangular(g);
  CHECK(glued->dim() == 6);
}

TEST_CASE("parse errors carry file, line and reason") {
  auto dir = temp_dir();
  write_file(dir / "bad1.alg", "field p=5\nvertex 1\narrow a 1 -> 2\nnilbound 2\n");
  io::Loader loader;
  try {
    loader.load_algebra(dir / "bad1.alg");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Parse);
    CHECK(std::string(e.what()).find("bad1.alg:3") != std::string::npos);
  }

  // Unknown arrow label in a module map line.
  write_file(dir / "mod_badarrow.mod",
             "algebra " + (data_dir() / "a2.alg").string() + "\ndim 1 = 1\nmap zz = [[1]]\n");
  try {
    loader.load_module(dir / "mod_badarrow.mod");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Parse);
    CHECK(std::string(e.what()).find("zz") != std::string::npos);
  }
}

TEST_CASE("module files violating a relation name the invariant") {
  auto dir = temp_dir();
  // Over the dual numbers x^2 = 0, the map x = [[1]] squares to 1 != 0.
  write_file(dir / "bad.mod",
             "algebra " + (data_dir() / "dualnum.alg").string() + "\ndim v = 1\nmap x = [[1]]\n");
  io::Loader loader;
  try {
    loader.load_module(dir / "bad.mod");
    FAIL("expected an invariant violation");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::InvariantViolation);
    CHECK(std::string(e.what()).find("relation") != std::string::npos);
  }
}

TEST_CASE("relation text parsing handles signs and coefficients") {
  auto dir = temp_dir();
  write_file(dir / "sq.alg",
             "field p=11\nvertex 1\nvertex 2\nvertex 3\nvertex 4\n"
             "arrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\n"
             "relation 1*a.b - 1*c.d\nnilbound 3\n");
  io::Loader loader;
  auto alg = loader.load_algebra(dir / "sq.alg");
  CHECK(alg->dim() == 9);
}

TEST_CASE("inventory cache round trip is exact and hash-guarded") {
  io::Loader loader;
  auto a2 = loader.load_algebra(data_dir() / "a2.alg");
  Inventory inv = enumerate_indecomposables(a2, 3);

  auto dir = temp_dir() / "cache";
  std::filesystem::remove_all(dir);
  io::cache_store(dir, inv);
  auto back = io::cache_load(dir, a2, 3);
  REQUIRE(back.has_value());
  CHECK(back->complete == inv.complete);
  CHECK(back->certificate == inv.certificate);
  CHECK(back->names == inv.names);
  REQUIRE(back->size() == inv.size());
  for (std::size_t i = 0; i < inv.size(); ++i) CHECK(*back->modules[i] == *inv.modules[i]);

  // A different dimension bound misses.
  CHECK_FALSE(io::cache_load(dir, a2, 4).has_value());

  // A different algebra (other hash) never hits this entry.
  auto kron = loader.load_algebra(data_dir() / "kronecker.alg");
  CHECK_FALSE(io::cache_load(dir, kron, 3).has_value());
}
