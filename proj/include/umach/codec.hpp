// Encodings of machine programs and configurations onto the universal
// alphabet {0,1,a,c,#,x,y}: a unary scheme, a binary scheme with fixed-width
// 0-based fields, and a packed variant mapping {0,1,a,c} onto bit pairs.
// Every encoder and decoder also exists as a finite-state transducer so that
// linear running time is witnessed by the transducer step count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "umach/machine.hpp"
#include "umach/transducer.hpp"

namespace umach {

// Words over the universal alphabet, stored as plain characters.
using UniversalWord = std::string;

enum class SchemeKind { Unary, Binary, BinaryPacked };

struct Scheme {
  SchemeKind kind = SchemeKind::Unary;
  int num_symbols = 1;
  int num_states = 2;

  // Field widths of the binary schemes.
  int symbol_width() const;
  int state_width() const;

  static Scheme for_machine(SchemeKind kind, const Machine& m) {
    return {kind, m.num_symbols, m.num_states};
  }

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

// Configuration code. Unary: s_i as 1^i 0, the state q_j as 0 1^j 0 between
// the left and right tape parts. Binary: s_i as fixed-width bits of i-1
// followed by 'a', the state as 'c' bits 'c'. Packed: the binary code with
// each character expanded to a bit pair. Injective per scheme.
UniversalWord encode_config(const Scheme& sch, const Configuration& c);

// Exact inverse of encode_config; throws on malformed block structure, a
// missing or duplicate state block, or out-of-range indices.
Configuration decode_config(const Scheme& sch, const UniversalWord& w);

// Program code: rules in canonical (state, symbol) order. Unary rule
// (q,s,q',s',d): 1^q 0 1^s 0 1^q' 0 1^s' 0 1^d 0 0 with d in {1,2,3} for
// L,N,R. Binary rule: the four fields fixed-width with 'a' after each, then
// two direction bits and a closing 'c'. The empty program encodes to the
// empty word.
UniversalWord encode_program(const Scheme& sch, const Machine& m);

// Exact inverse of encode_program up to canonical rule order.
std::vector<Rule> decode_program(const Scheme& sch, const UniversalWord& w);

// Upper bound on |encode_config| for a configuration carrying w_len tape
// symbols. Unary: w_len*(n+1)+m+4. Binary: w_len*(ws+1)+wq+2, and twice
// that for the packed scheme.
std::uint64_t space_bound(const Scheme& sch, std::uint64_t w_len);

// Pair packing between {0,1,a,c} and {00,01,10,11}.
UniversalWord pack_pairs(const UniversalWord& w);
UniversalWord unpack_pairs(const UniversalWord& w);

// Transducer realizations. Structured values cross the transducer boundary
// as flat token streams: symbol s_i is token i, state q_j is token n+j, and
// direction d is token n+m+d, giving an input alphabet of n+m+3 tokens.
// Encoders map token streams to code characters; decoders map code
// characters back to token streams, emitting on block boundaries.
enum class CodecDirection { Encode, Decode };
enum class CodecTarget { Program, Config };

Dfst codec_as_dfst(const Scheme& sch, CodecDirection dir, CodecTarget target);

TSym sym_token(const Scheme& sch, int symbol);
TSym state_token(const Scheme& sch, int state);
TSym dir_token(const Scheme& sch, Move d);

TWord config_to_stream(const Scheme& sch, const Configuration& c);
Configuration stream_to_config(const Scheme& sch, const TWord& tokens);
TWord program_to_stream(const Scheme& sch, const Machine& m);
std::vector<Rule> stream_to_program(const Scheme& sch, const TWord& tokens);

// Character/code-unit conversions for feeding UniversalWords to transducers.
TWord uw_to_tword(const UniversalWord& w);
UniversalWord tword_to_uw(const TWord& w);

}  // namespace umach
