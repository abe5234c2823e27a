/*
Copyright 2026 The BlinQS Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "blinqs/spiht.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <span>

namespace blinqs
{

   BitBuffer::BitBuffer(std::vector<std::uint8_t> bytes, std::uint64_t bits)
       : _bytes(std::move(bytes)), _bits(bits)
   {
       if (_bytes.size() != (bits + 7) / 8)
           throw ArgumentError("bit count does not match byte buffer");
   }

   BitBuffer BitBuffer::prefix(std::uint64_t n) const
   {
       n = std::min(n, _bits);
       std::vector<std::uint8_t> bytes(_bytes.begin(), _bytes.begin() + std::ptrdiff_t((n + 7) / 8));

       if ((n & 7) != 0)
           bytes.back() &= std::uint8_t(0xFF00u >> (n & 7));

       return {std::move(bytes), n};
   }

   namespace
   {
       struct Exhausted
       {
       };

       using SetType = SpihtState::SetType;
       using SetEntry = SpihtState::SetEntry;

       // Spatial-orientation forest over the block, in CSR form. Children
       // always have a larger raster index than their parent.
       struct Topology
       {
           std::vector<std::uint32_t> roots;
           std::vector<std::uint32_t> first;
           std::vector<std::uint32_t> kids;

           std::span<const std::uint32_t> children(std::uint32_t p) const
           {
               return {kids.data() + first[p], first[p + 1] - first[p]};
           }

           bool has_children(std::uint32_t p) const { return first[p + 1] > first[p]; }

           bool has_grandchildren(std::uint32_t p) const
           {
               for (auto c : children(p))
               {
                   if (has_children(c))
                       return true;
               }

               return false;
           }
       };

       Topology build_topology(std::size_t rows, std::size_t cols, TreeLayout layout)
       {
           const auto n = rows * cols;
           Topology t;
           t.first.assign(n + 1, 0);

           if (layout == TreeLayout::flat || rows < 2 || cols < 2)
           {
               t.roots.resize(n);

               for (std::size_t i = 0; i < n; ++i)
                   t.roots[i] = std::uint32_t(i);

               return t;
           }

           const auto hl = (rows + 1) / 2, wl = (cols + 1) / 2;
           std::vector<std::int64_t> parent(n, -1);

           auto adopt = [&](std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc, std::size_t dr, std::size_t dc) {
               for (std::size_t y = 0; y < nr; ++y)
                   for (std::size_t x = 0; x < nc; ++x)
                   {
                       const auto pr = 2 * (y / 2) + dr, pc = 2 * (x / 2) + dc;

                       if (pr < hl && pc < wl)
                           parent[(r0 + y) * cols + c0 + x] = std::int64_t(pr * cols + pc);
                   }
           };

           adopt(0, wl, hl, cols - wl, 0, 1);         // HL quadrant
           adopt(hl, 0, rows - hl, wl, 1, 0);         // LH quadrant
           adopt(hl, wl, rows - hl, cols - wl, 1, 1); // HH quadrant

           std::vector<std::uint32_t> count(n, 0);

           for (std::size_t i = 0; i < n; ++i)
           {
               if (parent[i] >= 0)
                   ++count[std::size_t(parent[i])];
           }

           for (std::size_t i = 0; i < n; ++i)
               t.first[i + 1] = t.first[i] + count[i];

           t.kids.resize(t.first[n]);
           std::vector<std::uint32_t> fill(t.first.begin(), t.first.end() - 1);

           for (std::size_t i = 0; i < n; ++i)
           {
               if (parent[i] >= 0)
                   t.kids[fill[std::size_t(parent[i])]++] = std::uint32_t(i);
           }

           for (std::size_t r = 0; r < hl; ++r)
               for (std::size_t c = 0; c < wl; ++c)
                   t.roots.push_back(std::uint32_t(r * cols + c));

           // Detail coefficients whose would-be parent falls outside an odd
           // sized LL quadrant are coded as extra roots.
           for (std::size_t i = 0; i < n; ++i)
           {
               const auto r = i / cols, c = i % cols;

               if ((r >= hl || c >= wl) && parent[i] < 0)
                   t.roots.push_back(std::uint32_t(i));
           }

           return t;
       }

       class Engine
       {
       public:
           explicit Engine(const Topology& topo) : _topo(topo)
           {
               _lip = topo.roots;

               for (auto p : topo.roots)
               {
                   if (topo.has_children(p))
                       _lis.push_back({p, SetType::A});
               }
           }

           template <class Side>
           void run(Side& side, int planes)
           {
               for (int n = planes - 1; n >= 0; --n)
               {
                   _plane = n;
                   _plane_start = side.consumed();
                   const auto lsp_before = _lsp.size();

                   sort_lip(side, n);
                   sort_lis(side, n);

                   for (std::size_t k = 0; k < lsp_before; ++k)
                       side.refine(_lsp[k], n);

                   _plane_ends.push_back(side.consumed());
               }

               _plane = -1;
               _plane_start = side.consumed();
           }

           const std::vector<std::uint64_t>& plane_ends() const { return _plane_ends; }

           SpihtState snapshot(std::uint64_t consumed) const
           {
               return {_lip, _lis, _lsp, _plane, consumed == _plane_start};
           }

       private:
           template <class Side>
           void sort_lip(Side& side, int n)
           {
               std::size_t w = 0, k = 0;

               try
               {
                   for (; k < _lip.size(); ++k)
                   {
                       const auto p = _lip[k];

                       if (side.pixel(p, n))
                       {
                           side.significant(p, n, side.sign(p));
                           _lsp.push_back(p);
                       }
                       else
                       {
                           _lip[w++] = p;
                       }
                   }
               }
               catch (const Exhausted&)
               {
                   for (; k < _lip.size(); ++k)
                       _lip[w++] = _lip[k];

                   _lip.resize(w);
                   throw;
               }

               _lip.resize(w);
           }

           template <class Side>
           void sort_lis(Side& side, int n)
           {
               std::size_t w = 0, k = 0;

               try
               {
                   for (; k < _lis.size(); ++k)
                   {
                       const SetEntry e = _lis[k];

                       if (e.type == SetType::A)
                       {
                           if (!side.descendants(e.pixel, n))
                           {
                               _lis[w++] = e;
                               continue;
                           }

                           for (auto c : _topo.children(e.pixel))
                           {
                               if (side.pixel(c, n))
                               {
                                   side.significant(c, n, side.sign(c));
                                   _lsp.push_back(c);
                               }
                               else
                               {
                                   _lip.push_back(c);
                               }
                           }

                           if (_topo.has_grandchildren(e.pixel))
                               _lis.push_back({e.pixel, SetType::B});
                       }
                       else
                       {
                           if (!side.grand_descendants(e.pixel, n))
                           {
                               _lis[w++] = e;
                               continue;
                           }

                           for (auto c : _topo.children(e.pixel))
                           {
                               if (_topo.has_children(c))
                                   _lis.push_back({c, SetType::A});
                           }
                       }
                   }
               }
               catch (const Exhausted&)
               {
                   for (; k < _lis.size(); ++k)
                       _lis[w++] = _lis[k];

                   _lis.resize(w);
                   throw;
               }

               _lis.resize(w);
           }

           const Topology& _topo;
           std::vector<std::uint32_t> _lip;
           std::vector<SetEntry> _lis;
           std::vector<std::uint32_t> _lsp;
           int _plane = -1;
           std::uint64_t _plane_start = 0;
           std::vector<std::uint64_t> _plane_ends;
       };

       class EncoderSide
       {
       public:
           EncoderSide(const IntGrid& q, const Topology& topo, std::uint64_t budget)
               : _mag(q.size()), _neg(q.size()), _desc(q.size(), 0), _grand(q.size(), 0), _budget(budget)
           {
               for (std::size_t i = 0; i < q.size(); ++i)
               {
                   const std::int64_t v = q[i];

                   if (v <= -(std::int64_t(1) << 30) || v >= (std::int64_t(1) << 30))
                       throw ArgumentError("SPIHT coefficients must satisfy |q| < 2^30");

                   _mag[i] = std::uint32_t(v < 0 ? -v : v);
                   _neg[i] = v < 0;
               }

               // Children have larger indices, so a reverse sweep sees them first.
               for (std::size_t i = q.size(); i-- > 0;)
               {
                   for (auto c : topo.children(std::uint32_t(i)))
                   {
                       _desc[i] = std::max({_desc[i], _mag[c], _desc[c]});
                       _grand[i] = std::max(_grand[i], _desc[c]);
                   }
               }
           }

           bool pixel(std::uint32_t p, int n) { return put(_mag[p] >= (1u << n)); }
           bool descendants(std::uint32_t p, int n) { return put(_desc[p] >= (1u << n)); }
           bool grand_descendants(std::uint32_t p, int n) { return put(_grand[p] >= (1u << n)); }
           bool sign(std::uint32_t p) { return put(_neg[p]); }
           void refine(std::uint32_t p, int n) { put((_mag[p] >> n) & 1u); }
           void significant(std::uint32_t, int, bool) {}

           std::uint64_t consumed() const { return _out.bits(); }

           BitBuffer take() { return std::move(_out); }

       private:
           bool put(bool bit)
           {
               if (_out.bits() >= _budget)
                   throw Exhausted{};

               _out.push(bit);
               return bit;
           }

           std::vector<std::uint32_t> _mag;
           std::vector<bool> _neg;
           std::vector<std::uint32_t> _desc;
           std::vector<std::uint32_t> _grand;
           BitBuffer _out;
           std::uint64_t _budget;
       };

       class DecoderSide
       {
       public:
           DecoderSide(const BitBuffer& in, std::uint64_t limit, std::size_t rows, std::size_t cols)
               : values(rows, cols), unresolved(rows, cols), _in(in), _limit(limit)
           {
           }

           bool pixel(std::uint32_t, int) { return get(); }
           bool descendants(std::uint32_t, int) { return get(); }
           bool grand_descendants(std::uint32_t, int) { return get(); }
           bool sign(std::uint32_t) { return get(); }

           void refine(std::uint32_t p, int n)
           {
               const bool bit = get();
               auto& v = values[p];

               if (bit)
                   v += v < 0 ? -(1 << n) : (1 << n);

               unresolved[p] = std::uint8_t(n);
           }

           void significant(std::uint32_t p, int n, bool negative)
           {
               values[p] = negative ? -(1 << n) : (1 << n);
               unresolved[p] = std::uint8_t(n);
           }

           std::uint64_t consumed() const { return _pos; }

           IntGrid values;
           Grid<std::uint8_t> unresolved;

       private:
           bool get()
           {
               if (_pos >= _limit)
                   throw Exhausted{};

               return _in.get(_pos++);
           }

           const BitBuffer& _in;
           std::uint64_t _limit;
           std::uint64_t _pos = 0;
       };

       int plane_count(const IntGrid& q)
       {
           std::uint64_t peak = 0;

           for (auto v : q.values())
               peak = std::max<std::uint64_t>(peak, std::uint64_t(v < 0 ? -std::int64_t(v) : v));

           return int(std::bit_width(peak));
       }
   }

   CodedBlock encode_block(const IntGrid& qblock, TreeLayout layout)
   {
       const Topology topo = build_topology(qblock.rows(), qblock.cols(), layout);
       EncoderSide side(qblock, topo, std::numeric_limits<std::uint64_t>::max());
       Engine engine(topo);

       CodedBlock cb;
       cb.secondary = layout == TreeLayout::quadrant;
       cb.rows = qblock.rows();
       cb.cols = qblock.cols();
       cb.planes = plane_count(qblock);

       engine.run(side, cb.planes);

       std::uint64_t prev = 0;

       for (auto end : engine.plane_ends())
       {
           cb.plane_lengths.push_back(std::uint32_t(end - prev));
           prev = end;
       }

       cb.payload = side.take();
       return cb;
   }

   DecodedBlock decode_block(const CodedBlock& cb, std::uint64_t n_bits)
   {
       DecodedBlock out;
       out.clamped = n_bits > cb.length();
       n_bits = std::min(n_bits, cb.length());

       const Topology topo = build_topology(cb.rows, cb.cols, cb.layout());
       DecoderSide side(cb.payload, n_bits, cb.rows, cb.cols);
       Engine engine(topo);

       try
       {
           engine.run(side, cb.planes);
       }
       catch (const Exhausted&)
       {
       }

       out.values = std::move(side.values);
       out.unresolved = std::move(side.unresolved);
       out.bits_used = side.consumed();
       return out;
   }

   SpihtState encoder_state_after(const IntGrid& qblock, TreeLayout layout, std::uint64_t n_bits)
   {
       const Topology topo = build_topology(qblock.rows(), qblock.cols(), layout);
       EncoderSide side(qblock, topo, n_bits);
       Engine engine(topo);

       try
       {
           engine.run(side, plane_count(qblock));
       }
       catch (const Exhausted&)
       {
       }

       return engine.snapshot(side.consumed());
   }

   SpihtState decoder_state_after(const CodedBlock& cb, std::uint64_t n_bits)
   {
       const Topology topo = build_topology(cb.rows, cb.cols, cb.layout());
       DecoderSide side(cb.payload, std::min(n_bits, cb.length()), cb.rows, cb.cols);
       Engine engine(topo);

       try
       {
           engine.run(side, cb.planes);
       }
       catch (const Exhausted&)
       {
       }

       return engine.snapshot(side.consumed());
   }

}
