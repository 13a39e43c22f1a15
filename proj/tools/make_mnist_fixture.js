#!/usr/bin/env node
// Regenerates the bundled MNIST subset under data/mnist/ from the npm
// "mnist" package (values are bytes scaled to [0, 1]; we undo that).
//
// Layout: test set interleaves labels 0,1,2,3 so any prefix is class
// balanced; train set is a seeded shuffle of the remaining 0..3 images.
// A sprinkle of other digits is kept in both files so loaders have to
// filter by label rather than trust the file.
//
// Usage: node tools/make_mnist_fixture.js [out_dir]

'use strict';
const fs = require('fs');
const path = require('path');
const mnist = require('mnist');

const outDir = process.argv[2] || path.join(__dirname, '..', 'data', 'mnist');
fs.mkdirSync(outDir, { recursive: true });

const TEST_PER_CLASS = 100;
const TRAIN_PER_CLASS = 900;
const SEED = 0x5eed;

function mulberry32(seed) {
  let a = seed >>> 0;
  return function () {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function toBytes(img) {
  const b = Buffer.alloc(784);
  for (let i = 0; i < 784; i++) b[i] = Math.round(img[i] * 255);
  return b;
}

function writeIdx(name, images, labels) {
  const ih = Buffer.alloc(16);
  ih.writeUInt32BE(0x803, 0);
  ih.writeUInt32BE(images.length, 4);
  ih.writeUInt32BE(28, 8);
  ih.writeUInt32BE(28, 12);
  fs.writeFileSync(path.join(outDir, name + '-images-idx3-ubyte'), Buffer.concat([ih, ...images]));

  const lh = Buffer.alloc(8);
  lh.writeUInt32BE(0x801, 0);
  lh.writeUInt32BE(labels.length, 4);
  fs.writeFileSync(path.join(outDir, name + '-labels-idx1-ubyte'),
                   Buffer.concat([lh, Buffer.from(labels)]));
}

// Test: strict 0,1,2,3 interleave with an off-task digit every 8 entries.
const testImages = [], testLabels = [];
let junkDigit = 4;
for (let i = 0; i < TEST_PER_CLASS; i++) {
  for (let d = 0; d < 4; d++) {
    testImages.push(toBytes(mnist[d].get(i)));
    testLabels.push(d);
    if (testLabels.length % 8 === 0) {
      testImages.push(toBytes(mnist[junkDigit].get(i)));
      testLabels.push(junkDigit);
      junkDigit = 4 + ((junkDigit - 3) % 6);
    }
  }
}

// Train: the remaining images of 0..3, shuffled, plus stray digits.
const pool = [];
for (let d = 0; d < 4; d++)
  for (let i = TEST_PER_CLASS; i < TEST_PER_CLASS + TRAIN_PER_CLASS; i++)
    pool.push([toBytes(mnist[d].get(i)), d]);
for (let d = 4; d < 10; d++)
  for (let i = 100; i < 108; i++) pool.push([toBytes(mnist[d].get(i)), d]);

const rand = mulberry32(SEED);
for (let i = pool.length - 1; i > 0; i--) {
  const j = Math.floor(rand() * (i + 1));
  [pool[i], pool[j]] = [pool[j], pool[i]];
}

writeIdx('t10k', testImages, testLabels);
writeIdx('train', pool.map(p => p[0]), pool.map(p => p[1]));

console.log(`wrote ${pool.length} train and ${testImages.length} test entries to ${outDir}`);
