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

#ifndef BLINQS_GRID_HPP
#define BLINQS_GRID_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blinqs
{

   // Row-major 2-D array with value semantics.
   template <class T>
   class Grid
   {
   public:
       Grid() = default;

       Grid(std::size_t rows, std::size_t cols, T fill = T{})
           : _rows(rows), _cols(cols), _data(rows * cols, fill)
       {
       }

       std::size_t rows() const { return _rows; }
       std::size_t cols() const { return _cols; }
       std::size_t size() const { return _data.size(); }
       bool empty() const { return _data.empty(); }

       T& operator()(std::size_t r, std::size_t c)
       {
           assert(r < _rows && c < _cols);
           return _data[r * _cols + c];
       }

       const T& operator()(std::size_t r, std::size_t c) const
       {
           assert(r < _rows && c < _cols);
           return _data[r * _cols + c];
       }

       T& operator[](std::size_t i) { return _data[i]; }
       const T& operator[](std::size_t i) const { return _data[i]; }

       std::span<T> row(std::size_t r) { return {_data.data() + r * _cols, _cols}; }
       std::span<const T> row(std::size_t r) const { return {_data.data() + r * _cols, _cols}; }

       std::span<T> values() { return _data; }
       std::span<const T> values() const { return _data; }

       bool operator==(const Grid&) const = default;

   private:
       std::size_t _rows = 0;
       std::size_t _cols = 0;
       std::vector<T> _data;
   };

   using RealGrid = Grid<double>;
   using IntGrid = Grid<std::int32_t>;

   // Execution policy for the data-parallel kernels. `serial` is the
   // reference path used by the tests; both must produce identical output.
   enum class Exec
   {
       serial,
       parallel
   };

}

#endif
